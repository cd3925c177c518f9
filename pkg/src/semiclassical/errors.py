"""Exception types raised by the numerical routines."""


class SemiclassicalError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SemiclassicalError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConvergenceError(SemiclassicalError, RuntimeError):
    """An iteration or root search hit its cap without converging."""


class QuadratureError(SemiclassicalError, RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy."""


class InsufficientLevelsError(SemiclassicalError, RuntimeError):
    """A spectral sum needs more converged levels than were supplied.

    The ``required`` attribute holds the number of levels that would make
    the truncation tail small enough.
    """

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required

"""Exact quartic-oscillator results from diagonalisation in the harmonic basis.

``H = p^2/2 + x^2/2 + (g/4) x^4`` with ``hbar = m = omega = 1``.  In the
number basis ``x^4`` couples ``n`` to ``n +- 2`` and ``n +- 4`` only, so each
parity block is a symmetric banded matrix with two off-diagonals.  The basis
is doubled until the requested levels stop moving.
"""

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eig_banded

from .errors import ConvergenceError, DomainError, InsufficientLevelsError
from .thermo import HeatSource, ThermoPoint

__all__ = [
    "Spectrum",
    "spectrum",
    "levels_required",
    "exact_z",
    "exact_specific_heat",
]

LEVEL_TOL = 1e-9
MAX_BASIS = 1 << 15
TAIL_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Levels ``eps_n`` in units of ``hbar omega``, lowest first.

    ``levels`` holds only the ``converged_count`` levels that moved by less
    than ``LEVEL_TOL * max(1, eps)`` when the basis was doubled.
    """

    g: float
    levels: tuple
    basis_size: int
    converged_count: int

    @property
    def ground(self):
        return self.levels[0]


def _parity_block(g, parity, size):
    # upper banded storage for eig_banded: row 2 is the diagonal
    n = 2 * np.arange(size, dtype=float) + parity
    band = np.zeros((3, size))
    band[2] = n + 0.5 + 0.25 * g * (6.0 * n * n + 6.0 * n + 3.0) / 4.0
    m = n[:-1]
    band[1, 1:] = 0.25 * g * np.sqrt((m + 1.0) * (m + 2.0)) * (2.0 * m + 3.0) / 2.0
    m = n[:-2]
    band[0, 2:] = 0.25 * g * np.sqrt((m + 1.0) * (m + 2.0) * (m + 3.0) * (m + 4.0)) / 4.0
    return band


def _levels(g, n_levels, basis_size):
    half = basis_size // 2
    out = []
    for parity in (0, 1):
        want = min(half, (n_levels + 1 - parity) // 2 + 1)
        vals = eig_banded(
            _parity_block(g, parity, half),
            lower=False,
            eigvals_only=True,
            select="i",
            select_range=(0, want - 1),
        )
        out.append(vals)
    return np.sort(np.concatenate(out))[:n_levels]


@functools.lru_cache(maxsize=64)
def _spectrum_cached(g, n_levels):
    if g == 0.0:
        levels = tuple(n + 0.5 for n in range(n_levels))
        return Spectrum(g, levels, n_levels, n_levels)
    size = max(64, 2 * (2 * n_levels + 32))
    prev = _levels(g, n_levels, size)
    while True:
        size *= 2
        if size > MAX_BASIS:
            raise ConvergenceError(
                f"{n_levels} levels at g={g} not stable to {LEVEL_TOL} "
                f"with basis size {MAX_BASIS}"
            )
        cur = _levels(g, n_levels, size)
        stable = np.abs(cur - prev) <= LEVEL_TOL * np.maximum(1.0, np.abs(cur))
        if stable.all():
            return Spectrum(g, tuple(float(x) for x in cur), size, n_levels)
        prev = cur


def spectrum(g, n_levels):
    """Lowest ``n_levels`` eigenvalues at coupling ``g``."""
    g = float(g)
    if not g >= 0.0 or not math.isfinite(g):
        raise DomainError(f"g must be finite and >= 0, got {g}")
    if int(n_levels) < 1:
        raise DomainError(f"n_levels must be >= 1, got {n_levels}")
    return _spectrum_cached(g, int(n_levels))


def levels_required(theta, ground=0.5, moment=0):
    """Smallest ``N`` whose tail bound ``e^{-theta(N+1/2)} / (1 - e^{-theta})`` is
    below ``TAIL_TOL`` times the ground-state term ``e^{-theta ground}``.

    ``moment=2`` tightens the budget by ``(theta N)^2`` so that the
    energy variance, not just ``Z``, is converged.
    """
    if not theta > 0.0:
        raise DomainError(f"theta must be positive, got {theta}")
    budget = -math.log(TAIL_TOL) - math.log(-math.expm1(-theta))
    n = max(1, math.floor(ground - 0.5 + budget / theta) + 1)
    if moment:
        budget += moment * math.log1p(theta * (n + 1))
        n = max(1, math.floor(ground - 0.5 + budget / theta) + 1)
    return n


def _check_tail(theta, spec, moment):
    n = spec.converged_count
    need = levels_required(theta, spec.ground, moment)
    if n < need:
        raise InsufficientLevelsError(
            f"theta={theta} needs {need} converged levels, spectrum has {n}", need
        )


def _resolve(theta, g, spec, moment=0):
    if spec is None:
        ground = spectrum(g, 1).ground
        spec = spectrum(g, levels_required(theta, ground, moment))
    elif spec.g != g:
        raise DomainError(f"spectrum was computed for g={spec.g}, not g={g}")
    _check_tail(theta, spec, moment)
    return np.asarray(spec.levels)


def exact_z(theta, g, spec=None):
    """``Z = sum_n exp(-theta eps_n)`` with a certified truncation tail.

    Without ``spec`` a spectrum with enough levels is computed on the fly.
    """
    eps = _resolve(theta, g, spec)
    return float(math.exp(-theta * eps[0]) * np.sum(np.exp(-theta * (eps - eps[0]))))


def exact_specific_heat(theta, g, spec=None):
    """``C = theta^2 Var(eps)`` under Boltzmann weights, no differentiation."""
    eps = _resolve(theta, g, spec, moment=2)
    w = np.exp(-theta * (eps - eps[0]))
    w /= w.sum()
    mean = float(np.dot(w, eps))
    var = float(np.dot(w, (eps - mean) ** 2))
    return ThermoPoint(theta, theta * theta * var, HeatSource.ORACLE)

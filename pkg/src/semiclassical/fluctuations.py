"""Quadratic fluctuations around a classical quartic path.

The fluctuation operator ``-d^2/dtheta^2 + U''(q_c)`` has the two solutions

* ``eta_a = dq_c/dtheta``, odd about the turning time, and
* ``eta_b = eta_a * Q`` with ``dQ/dtheta = 1 / eta_a^2``, even about it.

``Q`` diverges where ``eta_a`` vanishes, but ``eta_b`` stays finite.  Here
``eta_b`` and its derivative are evaluated from fused closed forms, so
nothing ever multiplies a zero by an infinity.  Everything else (the
bilinears ``omega`` and ``w_coeff``, the propagator, the van Vleck
determinant, the Dirichlet Green function) is built from the four numbers
``eta_a, eta_a', eta_b, eta_b'``.  Their Wronskian
``eta_a eta_b' - eta_a' eta_b`` is 1.
"""

import math
from dataclasses import dataclass

from . import _numerics
from .classical import (
    QUARTIC,
    ClassicalPath,
    _check_pair,
    _stretch,
    q_plus,
    solve_path,
    theta_from_turning,
    velocity_field,
)
from .elliptic import epsilon_from_triple, jacobi
from .errors import DomainError

__all__ = [
    "FluctuationKernel",
    "build_kernel",
    "q_function",
    "q_zero_generic",
    "q_function_generic",
    "omega",
    "w_coeff",
    "propagator",
    "van_vleck",
    "van_vleck_from_derivative",
    "green_function",
]


@dataclass(frozen=True)
class _Point:
    # fluctuation data at one time
    eta_a: float
    eta_a_dot: float
    eta_b: float
    eta_b_dot: float


@dataclass(frozen=True)
class FluctuationKernel:
    """Fluctuation solutions around one quartic path.

    ``q_t = 0`` gives the harmonic kernel, where ``eta_a = sinh(theta - Theta/2)``
    and ``eta_b = -cosh(theta - Theta/2)``.  That kernel is normalised
    differently from the small-``q_t`` limit of the quartic one.  Every
    bilinear quantity is insensitive to the normalisation.
    """

    path: ClassicalPath
    q_zero: float

    @property
    def theta_total(self):
        return self.path.theta_total

    @property
    def harmonic(self):
        return self.path.q_t == 0.0

    def _check_theta(self, theta):
        if not 0.0 <= theta <= self.theta_total:
            raise DomainError(f"theta={theta} outside [0, {self.theta_total}]")

    def point(self, theta):
        self._check_theta(theta)
        half = 0.5 * self.theta_total
        if self.harmonic:
            x = theta - half
            return _Point(math.sinh(x), math.cosh(x), -math.cosh(x), -math.sinh(x))
        q = self.path.q_t
        m = self.path.modulus
        s = _stretch(q)
        side = 1.0 if theta >= half else -1.0
        u = s * abs(theta - half)
        t = jacobi(u, m)
        if not t.cn > 0.0:
            raise DomainError(f"path with q_t={q} leaves the well before theta={theta}")
        k2, kp2 = m.m, m.m_prime
        sn, cn, dn = side * t.sn, t.cn, t.dn
        us = side * u
        eps = side * epsilon_from_triple(t, m)
        c = -kp2 / k2
        d = (kp2 - k2) / k2
        a = c * us + d * eps
        r = sn * a - cn * dn - kp2 * cn * sn * sn / dn
        p = dn / (cn * cn)
        dp = sn * (2.0 * dn * dn - k2 * cn * cn) / cn**3
        dt = sn * (-sn * sn * dn * dn + 2.0 * cn * cn * dn * dn + k2 * sn * sn * cn * cn) / (dn * dn)
        dr = cn * dn * a + sn * (c + d * dn * dn) + sn * dn * dn + k2 * sn * cn * cn - kp2 * dt
        qc = q / cn
        return _Point(
            eta_a=q * s * sn * dn / (cn * cn),
            eta_a_dot=qc + qc**3,
            eta_b=p * r / (q * s * s),
            eta_b_dot=(dp * r + p * dr) / (q * s),
        )

    def eta_a(self, theta):
        return self.point(theta).eta_a

    def eta_a_dot(self, theta):
        return self.point(theta).eta_a_dot

    def eta_b(self, theta):
        return self.point(theta).eta_b

    def eta_b_dot(self, theta):
        return self.point(theta).eta_b_dot

    def q_func(self, theta):
        return q_function(self, theta)


def _q_quartic(q, m, u, t):
    # closed form of Q at u = s (theta - Theta/2) > 0, up to the overall sign
    k2, kp2 = m.m, m.m_prime
    s = _stretch(q)
    eps = epsilon_from_triple(t, m)
    bracket = (
        -kp2 / k2 * u
        + (kp2 - k2) / k2 * eps
        - t.cn * t.dn / t.sn
        - kp2 * t.cn * t.sn / t.dn
    )
    return bracket / (q * q * s**3)


def build_kernel(q_t, theta_total):
    """Solve the path through ``q_t`` and build its fluctuation kernel."""
    theta_total = float(theta_total)
    if not theta_total > 0.0:
        raise DomainError(f"theta_total must be positive, got {theta_total}")
    q_t = float(q_t)
    if abs(q_t) >= q_plus(theta_total):
        raise DomainError(f"|q_t|={abs(q_t)} is not below q_plus({theta_total})")
    path = solve_path(q_t, theta_total)
    if q_t == 0.0:
        return FluctuationKernel(path, 1.0 / math.tanh(0.5 * theta_total))
    u = _stretch(q_t) * 0.5 * theta_total
    t = jacobi(u, path.modulus)
    return FluctuationKernel(path, -_q_quartic(q_t, path.modulus, u, t))


def q_function(kernel, theta):
    """``Q(theta)``, odd about the turning time and divergent there.

    Raises :class:`DomainError` at ``theta = Theta/2``; use ``kernel.eta_b``,
    which is finite there.
    """
    kernel._check_theta(theta)
    half = 0.5 * kernel.theta_total
    x = theta - half
    if x == 0.0:
        raise DomainError("Q diverges at the turning time; evaluate eta_b instead")
    if kernel.harmonic:
        return -1.0 / math.tanh(x)
    if x < 0.0:
        return -q_function(kernel, kernel.theta_total - theta)
    path = kernel.path
    q = abs(path.q_t)
    u = _stretch(q) * x
    return _q_quartic(q, path.modulus, u, jacobi(u, path.modulus))


def q_zero_generic(q0, q_t, well=QUARTIC):
    """``Q(0) = -(dTheta/dq_t) / (2 U'(q_t))`` at fixed ``q0``.

    The derivative comes from Richardson-extrapolated central differences
    of the travel time.  The stencil has to stay inside ``0 < |q_t| < |q0|``.
    """
    _check_pair(q0, q_t)
    if q_t == 0.0 or q_t == q0:
        raise DomainError("Q(0) needs 0 < |q_t| < |q0|")
    h = 1e-5 * max(1.0, abs(q_t))
    if not h < min(abs(q_t), abs(q0 - q_t)):
        raise DomainError(f"q_t={q_t} too close to 0 or q0={q0} for the difference stencil")
    dtheta = _numerics.richardson_derivative(
        lambda x: theta_from_turning(q0, x, well, epsrel=1e-13), q_t, h
    )
    return -dtheta / (2.0 * well.du(q_t))


def q_function_generic(q0, q_t, theta, well=QUARTIC):
    """``Q(theta)`` on the inbound leg ``0 <= theta < Theta/2`` of a generic well.

    It is ``Q(0) + int_0^theta dtheta'/qdot^2``, written as an integral over
    position up to the point the path reaches at ``theta``.  That point is
    located by bisection on the travel time.  It is slow but fully
    independent of the elliptic closed forms.
    """
    q_zero = q_zero_generic(q0, q_t, well)
    if theta == 0.0:
        return q_zero
    half = 0.5 * theta_from_turning(q0, q_t, well)
    if not 0.0 < theta < half:
        raise DomainError(f"theta={theta} not on the inbound leg (0, {half})")

    def inv_speed(x, power):
        return abs(velocity_field(x, q_t, well)) ** (-power)

    def elapsed(x):
        # time to travel from q0 inward to x
        return abs(_numerics.quad(lambda y: inv_speed(y, 1), x, q0, epsrel=1e-13)[0])

    a, b = (q_t, q0) if q0 > 0 else (q0, q_t)
    lo, hi = a, b
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        # elapsed time shrinks as x moves toward q0
        toward_q0 = elapsed(mid) > theta
        if (q0 > 0) == toward_q0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    extra = abs(_numerics.quad(lambda y: inv_speed(y, 3), x, q0, epsrel=1e-12)[0])
    return q_zero + extra


def omega(kernel, theta1, theta2):
    """``Omega_12 = eta_a(1) eta_b(2) - eta_a(2) eta_b(1)``."""
    p1, p2 = kernel.point(theta1), kernel.point(theta2)
    return p1.eta_a * p2.eta_b - p2.eta_a * p1.eta_b


def w_coeff(kernel, theta_i, theta_j):
    """``W_ij = d Omega_ij / d theta_j``; equals 1 on the diagonal."""
    pi, pj = kernel.point(theta_i), kernel.point(theta_j)
    return pi.eta_a * pj.eta_b_dot - pj.eta_a_dot * pi.eta_b


def propagator(kernel, theta1, eta1, theta2, eta2, g):
    """Gaussian fluctuation propagator from ``(theta1, eta1)`` to ``(theta2, eta2)``."""
    if not g > 0.0:
        raise DomainError(f"g must be positive, got {g}")
    if not theta1 < theta2:
        raise DomainError("propagator needs theta1 < theta2")
    p1, p2 = kernel.point(theta1), kernel.point(theta2)
    om = p1.eta_a * p2.eta_b - p2.eta_a * p1.eta_b
    if not om > 0.0:
        raise DomainError(f"Omega_12 = {om} is not positive")
    w12 = p1.eta_a * p2.eta_b_dot - p2.eta_a_dot * p1.eta_b
    w21 = p2.eta_a * p1.eta_b_dot - p1.eta_a_dot * p2.eta_b
    quad_form = w12 * eta2 * eta2 + w21 * eta1 * eta1 - 2.0 * eta1 * eta2
    return math.exp(-quad_form / (2.0 * g * om)) / math.sqrt(2.0 * math.pi * g * om)


def van_vleck(kernel, g):
    """van Vleck determinant ``2 pi g Omega(0, Theta)``."""
    if not g > 0.0:
        raise DomainError(f"g must be positive, got {g}")
    value = 2.0 * math.pi * g * omega(kernel, 0.0, kernel.theta_total)
    if not value > 0.0:
        raise DomainError(f"van Vleck determinant {value} is not positive")
    return value


def van_vleck_from_derivative(q0, q_t, g, well=QUARTIC):
    """van Vleck determinant from ``dTheta/dq_t`` at fixed ``q0``.

    ``4 pi g [U(q_t) - U(q0)] (dTheta/dq_t) / U'(q_t)``, an independent route
    through the generic travel-time quadrature.
    """
    if not g > 0.0:
        raise DomainError(f"g must be positive, got {g}")
    q_zero = q_zero_generic(q0, q_t, well)
    return 8.0 * math.pi * g * well.delta_u(q0, q_t) * q_zero


def green_function(kernel, theta, theta_prime):
    """Dirichlet Green function ``Omega(0, lo) Omega(hi, Theta) / Omega(0, Theta)``."""
    lo, hi = min(theta, theta_prime), max(theta, theta_prime)
    big = kernel.theta_total
    if lo == 0.0 or hi == big:
        kernel._check_theta(lo)
        kernel._check_theta(hi)
        return 0.0
    p0, pl, ph, pb = (kernel.point(x) for x in (0.0, lo, hi, big))
    left = p0.eta_a * pl.eta_b - pl.eta_a * p0.eta_b
    right = ph.eta_a * pb.eta_b - pb.eta_a * ph.eta_b
    whole = p0.eta_a * pb.eta_b - pb.eta_a * p0.eta_b
    return left * right / whole

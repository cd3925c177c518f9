"""Classical Euclidean paths in an inverted single well.

A path is labelled by its turning point ``q_t`` and the total imaginary time
``theta_total``; it starts at ``q0`` at time 0, reaches ``q_t`` at
``theta_total / 2`` and returns to ``q0``.  For the quartic well
``U = q^2/2 + q^4/4`` every map has a closed form in Jacobi elliptic
functions.  Generic wells go through one-dimensional quadratures, which also
serve as independent checks on the closed forms.

All inputs are dimensionless.  Negative turning points of the quartic well
are reduced to positive ones by parity.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

from . import _numerics
from .elliptic import Modulus, complete_k, jacobi, jacobi_epsilon
from .errors import ConvergenceError, DomainError

__all__ = [
    "SingleWell",
    "QUARTIC",
    "HARMONIC",
    "ClassicalPath",
    "velocity_field",
    "modulus_from_turning",
    "modulus_from_theta",
    "period_of_modulus",
    "q_plus",
    "path_point",
    "path_velocity",
    "endpoint_from_turning",
    "turning_from_endpoint",
    "theta_from_turning",
    "classical_action",
    "action_from_endpoints",
    "solve_path",
]

_BAND = 1e-12


@dataclass(frozen=True)
class SingleWell:
    """A single-well potential with its first four derivatives.

    The minimum must sit at the origin with ``u(0) = 0`` and ``d2u(0) > 0``.
    """

    u: Callable[[float], float]
    du: Callable[[float], float]
    d2u: Callable[[float], float]
    d3u: Callable[[float], float]
    d4u: Callable[[float], float]
    name: str = field(default="custom", compare=False)

    def delta_u(self, q, q_ref):
        """``u(q) - u(q_ref)`` without cancellation when ``q`` is close to ``q_ref``."""
        return self.rise(q_ref, q - q_ref)

    def rise(self, q_ref, d):
        """``u(q_ref + d) - u(q_ref)``; exact in ``d`` even when ``q_ref + d`` rounds to ``q_ref``."""
        if abs(d) < 1e-3 * max(1.0, abs(q_ref)):
            return d * (
                self.du(q_ref)
                + d * (self.d2u(q_ref) / 2.0 + d * (self.d3u(q_ref) / 6.0 + d * self.d4u(q_ref) / 24.0))
            )
        return self.u(q_ref + d) - self.u(q_ref)


QUARTIC = SingleWell(
    u=lambda q: 0.5 * q * q + 0.25 * q**4,
    du=lambda q: q + q**3,
    d2u=lambda q: 1.0 + 3.0 * q * q,
    d3u=lambda q: 6.0 * q,
    d4u=lambda q: 6.0,
    name="quartic",
)

HARMONIC = SingleWell(
    u=lambda q: 0.5 * q * q,
    du=lambda q: q,
    d2u=lambda q: 1.0,
    d3u=lambda q: 0.0,
    d4u=lambda q: 0.0,
    name="harmonic",
)


def velocity_field(q, q_ref, well=QUARTIC):
    """Signed velocity ``sign(q_ref - q) * sqrt(2 [U(q) - U(q_ref)])``.

    Differences inside a 1e-12 band below zero are clamped to zero.
    """
    du = well.delta_u(q, q_ref)
    if du < 0.0:
        if du < -_BAND * max(1.0, abs(well.u(q_ref))):
            raise DomainError(f"U({q}) < U({q_ref}): outside the region of motion")
        du = 0.0
    return math.copysign(math.sqrt(2.0 * du), q_ref - q) if q != q_ref else 0.0


def modulus_from_turning(q_t):
    """Modulus ``k^2 = (2 + q_t^2) / (2 (1 + q_t^2))`` of the quartic path."""
    q = abs(float(q_t))
    if q <= 1.0:
        q2 = q * q
        return Modulus.from_parameters((2.0 + q2) / (2.0 * (1.0 + q2)), q2 / (2.0 * (1.0 + q2)))
    t = 1.0 / (q * q)
    return Modulus.from_parameters((1.0 + 2.0 * t) / (2.0 * (1.0 + t)), 1.0 / (2.0 * (1.0 + t)))


def _stretch(q_t):
    # sqrt(1 + q_t^2) = 1 / sqrt(2 k^2 - 1)
    return math.hypot(1.0, q_t)


def period_of_modulus(m):
    """``f(k) = 2 sqrt(2k^2 - 1) K(k)``, the time at which ``q0`` escapes to infinity."""
    if m.k_prime == 0.0:
        return math.inf
    x = (m.k - m.k_prime) * (m.k + m.k_prime)
    if x <= 0.0:
        return 0.0
    return 2.0 * math.sqrt(x) * complete_k(m)


def _escape_time(q):
    # f(k(q)) written through q_t, accurate at both ends of (0, inf)
    if q == 0.0:
        return math.inf
    return 2.0 * complete_k(modulus_from_turning(q)) / _stretch(q)


def q_plus(theta):
    """Largest admissible turning point at inverse temperature ``theta``.

    Found by geometric bisection on ``f(k(q)) = theta``; ``f`` decreases
    monotonically from infinity at ``q = 0`` to zero as ``q -> infinity``.
    """
    theta = float(theta)
    if not theta > 0.0:
        raise DomainError(f"theta must be positive, got {theta}")
    if math.isinf(theta):
        return 0.0
    guess_low = 4.0 * math.sqrt(2.0) * math.exp(-0.5 * theta)
    guess_high = 2.0 * 1.8540746773013719 / theta
    lo, hi = 0.25 * min(guess_low, guess_high), 4.0 * max(guess_low, guess_high)
    for _ in range(200):
        if _escape_time(lo) >= theta:
            break
        lo *= 0.25
    for _ in range(200):
        if _escape_time(hi) <= theta:
            break
        hi *= 4.0
    if lo <= 0.0 or not math.isfinite(hi):
        raise ConvergenceError(f"could not bracket q_plus for theta={theta}")
    for _ in range(400):
        mid = math.sqrt(lo * hi)
        if not lo < mid < hi or hi / lo - 1.0 <= 4e-16:
            return mid
        if _escape_time(mid) > theta:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"q_plus bisection did not converge for theta={theta}")


def modulus_from_theta(theta):
    """The modulus ``k_theta`` solving ``2 sqrt(2k^2 - 1) K(k) = theta``."""
    return modulus_from_turning(q_plus(theta))


def _triple(q_t, theta_total, theta):
    m = modulus_from_turning(q_t)
    u = _stretch(q_t) * abs(theta - 0.5 * theta_total)
    return m, u, jacobi(u, m)


def _check_inside(t, q_t, theta_total):
    if not t.cn > 0.0:
        raise DomainError(
            f"path with q_t={q_t} escapes to infinity before theta={theta_total} "
            "(|q_t| >= q_plus)"
        )


def path_point(q_t, theta_total, theta):
    """``q_c(theta) = q_t nc(u_theta, k)`` for the quartic well."""
    if q_t == 0.0:
        return 0.0
    _, _, t = _triple(q_t, theta_total, theta)
    _check_inside(t, q_t, theta_total)
    return q_t / t.cn


def path_velocity(q_t, theta_total, theta):
    """``dq_c/dtheta = q_t sqrt(1+q_t^2) sn dn nc^2``; negative before the turning point for q_t > 0."""
    if q_t == 0.0:
        return 0.0
    _, _, t = _triple(q_t, theta_total, theta)
    _check_inside(t, q_t, theta_total)
    sign = 1.0 if theta >= 0.5 * theta_total else -1.0
    return sign * q_t * _stretch(q_t) * t.sn * t.dn / (t.cn * t.cn)


def endpoint_from_turning(q_t, theta_total):
    """Endpoint ``q0 = q_t nc(u_Theta, k)`` reached after ``theta_total``."""
    if q_t == 0.0:
        return 0.0
    return path_point(q_t, theta_total, theta_total)


def _endpoint_or_inf(q_t, theta_total):
    t = _triple(q_t, theta_total, theta_total)[2]
    return q_t / t.cn if t.cn > 0.0 else math.inf


def turning_from_endpoint(q0, theta_total):
    """Inverse of :func:`endpoint_from_turning` at fixed ``theta_total``, by bisection."""
    if q0 == 0.0:
        return 0.0
    target = abs(q0)
    hi = q_plus(theta_total)
    lo = 0.0
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi or hi - lo <= 4e-16 * mid:
            return math.copysign(mid, q0)
        if _endpoint_or_inf(mid, theta_total) < target:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"turning point bisection failed for q0={q0}")


def _check_pair(q0, q_t):
    if q_t != 0.0 and (q0 * q_t < 0.0 or abs(q_t) > abs(q0)):
        raise DomainError(f"need sign(q0) = sign(q_t) and |q_t| <= |q0|; got q0={q0}, q_t={q_t}")


def theta_from_turning(q0, q_t, well=QUARTIC, *, epsrel=1e-12):
    """Travel time ``2 * int_{q_t}^{q0} dq / |v(q, q_t)|`` for a generic well.

    The inverse square-root singularity at ``q_t`` is removed by
    ``q = q_t + (q0 - q_t) s^2``.
    """
    _check_pair(q0, q_t)
    if q0 == q_t:
        return 0.0
    if q_t == 0.0:
        return math.inf
    span = q0 - q_t
    aspan = abs(span)

    def integrand(s):
        if s == 0.0:
            return 4.0 * aspan / math.sqrt(2.0 * abs(well.du(q_t)) * aspan)
        du = well.rise(q_t, span * s * s)
        return 4.0 * aspan * s / math.sqrt(2.0 * du)

    knee = math.sqrt(min(1.0, abs(q_t) / aspan))
    value, _ = _numerics.quad(integrand, 0.0, 1.0, epsrel=epsrel, points=[knee])
    return value


def action_from_endpoints(q0, q_t, theta_total, well=QUARTIC, *, epsrel=1e-12):
    """Classical action ``Theta U(q_t) + 2 int_{q_t}^{q0} |v| dq`` by quadrature."""
    _check_pair(q0, q_t)
    if q0 == q_t:
        return theta_total * well.u(q_t)
    span = q0 - q_t
    aspan = abs(span)

    def integrand(s):
        du = well.rise(q_t, span * s * s)
        return 4.0 * aspan * s * math.sqrt(2.0 * max(du, 0.0))

    knee = math.sqrt(min(1.0, abs(q_t) / aspan)) if q_t else 0.0
    value, _ = _numerics.quad(integrand, 0.0, 1.0, epsrel=epsrel, points=[knee])
    return theta_total * well.u(q_t) + value


def classical_action(q_t, theta_total):
    """Action of the quartic path from its closed form in E(phi_Theta, k).

    For turning points so small that the closed form is swamped by
    cancellation the quadrature form is used instead.
    """
    q = abs(q_t)
    if q == 0.0:
        return 0.0
    m, u, t = _triple(q, theta_total, theta_total)
    _check_inside(t, q_t, theta_total)
    return _action_from_triple(q, theta_total, m, u, t)


def _action_from_triple(q, theta_total, m, u, t):
    # q > 0, t = jacobi(u_Theta) with cn > 0
    q2 = q * q
    s = _stretch(q)
    e = jacobi_epsilon(u, m, t)
    nc2 = 1.0 / (t.cn * t.cn)
    a = -s * (e + 0.5 * q2 * u)
    b = t.sn * (1.0 + 0.5 * q2 * nc2) * math.sqrt(1.0 + 0.5 * q2 * (1.0 + nc2))
    value = theta_total * (0.5 * q2 + 0.25 * q2 * q2) + (4.0 / 3.0) * (a + b)
    if value < 1e-6 * (abs(a) + abs(b)):
        return action_from_endpoints(q / t.cn, q, theta_total)
    return value


@dataclass(frozen=True)
class ClassicalPath:
    """A solved quartic path, labelled by turning point and total time."""

    q_t: float
    theta_total: float
    modulus: Modulus
    q0: float
    action: float

    def point(self, theta):
        return path_point(self.q_t, self.theta_total, theta)

    def velocity(self, theta):
        return path_velocity(self.q_t, self.theta_total, theta)


def solve_path(q_t, theta_total):
    """Build the :class:`ClassicalPath` through turning point ``q_t``."""
    return ClassicalPath(
        q_t=q_t,
        theta_total=theta_total,
        modulus=modulus_from_turning(q_t),
        q0=endpoint_from_turning(q_t, theta_total),
        action=classical_action(q_t, theta_total),
    )

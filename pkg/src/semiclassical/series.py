"""Semiclassical partition function of the quartic oscillator.

``Z2`` sums the classical Boltzmann weight ``exp(-I/g)`` of every closed
path, times its Gaussian fluctuation factor ``D``, over turning points
``|q_t| < q_plus``.  Also here:

* the high- and low-temperature limits of that integral;
* the ground state read off the low-temperature density matrix, with its
  Rayleigh-quotient energy;
* the specific heat;
* the first correction ``a1`` beyond the quadratic order.

``g = 0`` is accepted by the partition-function routines and returns the
harmonic closed forms.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from . import _numerics, oracle
from .classical import _action_from_triple, _stretch, modulus_from_turning, q_plus
from .elliptic import epsilon_from_triple, jacobi
from .errors import DomainError
from .fluctuations import build_kernel, q_function
from .thermo import HeatSource, ThermoPoint

__all__ = [
    "SeriesResult",
    "ThermoPoint",
    "HeatSource",
    "ValidityWarning",
    "density_d",
    "z2",
    "z2_high_t",
    "z2_low_t",
    "ground_state_wavefunction",
    "ground_energy",
    "specific_heat",
    "first_correction_a1",
    "first_correction_a1_velocity_form",
    "harmonic_a1",
    "z_corrected",
    "validity",
]

Z_EPSREL = 1e-12
A1_EPSREL = 1e-9
# exponent I/g beyond which the integrand is dropped from the main interval
_CUT_EXPONENT = 60.0
# -ln of the tail fraction allowed when truncating limit integrals
_TAIL_EXPONENT = 40.0


class ValidityWarning(UserWarning):
    """The first correction is not small: ``g Theta^3 / 40 > 1``."""


@dataclass(frozen=True)
class SeriesResult:
    theta: float
    g: float
    z2: float
    validity: float
    quad_error: float
    correction_a1_weighted: Optional[float] = None
    z_corrected: Optional[float] = None


def validity(theta, g):
    """Bound ``g Theta^3 / 40`` on the relative size of the first correction."""
    return g * theta**3 / 40.0


def _check(theta, g, allow_zero=False):
    if not theta > 0.0 or not math.isfinite(theta):
        raise DomainError(f"theta must be positive and finite, got {theta}")
    if not (g > 0.0 or (allow_zero and g == 0.0)) or not math.isfinite(g):
        raise DomainError(f"g must be positive, got {g}")


def _parts(q, theta):
    # (sqrt(4 pi g) D, I) for 0 < q < q_plus, sharing one Jacobi evaluation
    m = modulus_from_turning(q)
    u = 0.5 * _stretch(q) * theta
    t = jacobi(u, m)
    if not t.cn > 0.0:
        raise DomainError(f"q_t={q} is not below q_plus({theta})")
    k2, kp2 = m.m, m.m_prime
    bracket = (
        kp2 / k2 * u
        + (k2 - kp2) / k2 * epsilon_from_triple(t, m)
        + t.cn * t.dn / t.sn
        + kp2 * t.cn * t.sn / t.dn
    )
    scaled_d = math.sqrt(_stretch(q) * bracket)
    return scaled_d, _action_from_triple(q, theta, m, u, t)


def density_d(q_t, theta, g):
    """Fluctuation density ``D(q_t, Theta)`` of the turning-point integral."""
    _check(theta, g)
    q = abs(float(q_t))
    if q == 0.0:
        return 1.0 / math.sqrt(4.0 * math.pi * g * math.tanh(0.5 * theta))
    if q >= q_plus(theta):
        raise DomainError(f"|q_t|={q} is not below q_plus({theta})")
    return _parts(q, theta)[0] / math.sqrt(4.0 * math.pi * g)


def _weight(q, theta, g):
    # D exp(-I/g) without the 1/sqrt(4 pi g), zero past the escape point
    if q == 0.0:
        return 1.0 / math.sqrt(math.tanh(0.5 * theta))
    try:
        d, action = _parts(q, theta)
    except DomainError:
        return 0.0
    return d * math.exp(-action / g)


def _cutoff(theta, g, top):
    # turning point where I/g reaches _CUT_EXPONENT, by geometric bisection
    def exponent(q):
        try:
            return _parts(q, theta)[1] / g
        except DomainError:
            return math.inf

    hi = top * (1.0 - 1e-12)
    if exponent(hi) <= _CUT_EXPONENT:
        return top
    lo = top * 1e-12
    if exponent(lo) >= _CUT_EXPONENT:
        return lo
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if hi / lo - 1.0 < 1e-6:
            break
        if exponent(mid) < _CUT_EXPONENT:
            lo = mid
        else:
            hi = mid
    return hi


def _breakpoints(theta, g, cut):
    # a few multiples of the Gaussian width of the q_t integrand
    # near q_t = 0 the action is q_t^2 sinh(Theta) / 2
    width = math.sqrt(2.0 * g / math.sinh(min(theta, 700.0)))
    return [j * width for j in (0.5, 1.0, 2.0, 4.0, 8.0) if j * width < cut]


def _turning_integral(theta, g, factor, epsrel):
    """``2 int_0^{q_plus} D exp(-I/g) factor(q_t) dq_t`` and its error estimate."""
    top = q_plus(theta)
    peak = _weight(0.0, theta, g)
    edge = _weight(top * (1.0 - 1e-9), theta, g)
    assert edge < 1e-6 * peak, f"integrand does not vanish at q_plus: {edge} vs peak {peak}"
    cut = _cutoff(theta, g, top)

    def f(q):
        w = _weight(q, theta, g)
        return w * factor(q) if w else 0.0

    main, err = _numerics.quad(f, 0.0, cut, epsrel=epsrel, points=_breakpoints(theta, g, cut))
    if cut < top:
        rest, err2 = _numerics.quad(f, cut, top, epsrel=epsrel, epsabs=epsrel * abs(main))
        main += rest
        err += err2
    scale = 2.0 / math.sqrt(4.0 * math.pi * g)
    return scale * main, scale * err


def _harmonic_z(theta):
    return 0.5 / math.sinh(0.5 * theta)


def z2(theta, g, *, epsrel=Z_EPSREL):
    """Quadratic semiclassical partition function ``Z2(Theta)``."""
    _check(theta, g, allow_zero=True)
    if g == 0.0:
        return SeriesResult(theta, g, _harmonic_z(theta), 0.0, 0.0)
    value, err = _turning_integral(theta, g, lambda q: 1.0, epsrel)
    return SeriesResult(theta, g, value, validity(theta, g), err)


def _even_tail(weight, q_max, epsrel):
    # 2 int_0^q_max weight(q) dq
    value, _ = _numerics.quad(weight, 0.0, q_max, epsrel=epsrel, points=[0.25 * q_max, 0.5 * q_max])
    return 2.0 * value


def z2_high_t(theta, g, *, epsrel=1e-12):
    """Classical limit ``(2 pi g Theta)^{-1/2} int exp(-Theta U(q)/g) dq``."""
    _check(theta, g)
    # U(q_max) = _TAIL_EXPONENT g / Theta
    v = _TAIL_EXPONENT * g / theta
    q_max = math.sqrt(4.0 * v / (1.0 + math.sqrt(1.0 + 4.0 * v)))
    r = theta / g

    def w(q):
        q2 = q * q
        return math.exp(-r * (0.5 * q2 + 0.25 * q2 * q2))

    return _even_tail(w, q_max, epsrel) / math.sqrt(2.0 * math.pi * g * theta)


def _cube_excess(q):
    # (1 + q^2/2)^{3/2} - 1 without cancellation
    return math.expm1(1.5 * math.log1p(0.5 * q * q))


def _low_t_qmax(g):
    # (4/3g) [(1 + q^2/2)^{3/2} - 1] = _TAIL_EXPONENT
    s2 = (1.0 + 0.75 * g * _TAIL_EXPONENT) ** (2.0 / 3.0)
    return math.sqrt(2.0 * (s2 - 1.0))


def z2_low_t(theta, g, *, epsrel=1e-12):
    """Low-temperature form ``(2/sqrt(pi g)) e^{-Theta/2} int phi0(q)^2 dq``."""
    _check(theta, g)

    def w(q):
        return ground_state_wavefunction(q, g) ** 2

    return 2.0 / math.sqrt(math.pi * g) * math.exp(-0.5 * theta) * _even_tail(w, _low_t_qmax(g), epsrel)


def ground_state_wavefunction(q0, g):
    """Unnormalised ground state from the low-temperature density matrix."""
    if not g > 0.0:
        raise DomainError(f"g must be positive, got {g}")
    s = math.sqrt(1.0 + 0.5 * q0 * q0)
    return math.exp(-2.0 / (3.0 * g) * _cube_excess(q0)) / math.sqrt(s * (1.0 + s))


def _log_derivative(q, g):
    s = math.sqrt(1.0 + 0.5 * q * q)
    dlog_ds = -2.0 / g * s * s - 0.5 / s - 0.5 / (1.0 + s)
    return dlog_ds * q / (2.0 * s)


def ground_energy(g, *, epsrel=1e-11):
    """Rayleigh quotient of the ground-state estimate, in units of ``hbar omega``.

    Uses ``h = -(g/2) d^2/dq^2 + U(q)/g`` in its symmetric form
    ``(g/2) <phi'|phi'> + <phi|U/g|phi>``.
    """
    if not g > 0.0:
        raise DomainError(f"g must be positive, got {g}")
    q_max = _low_t_qmax(g)

    def norm(q):
        return ground_state_wavefunction(q, g) ** 2

    def energy(q):
        q2 = q * q
        lp = _log_derivative(q, g)
        return norm(q) * (0.5 * g * lp * lp + (0.5 * q2 + 0.25 * q2 * q2) / g)

    pts = [0.25 * q_max, 0.5 * q_max]
    num, _ = _numerics.quad(energy, 0.0, q_max, epsrel=epsrel, points=pts)
    den, _ = _numerics.quad(norm, 0.0, q_max, epsrel=epsrel, points=pts)
    return num / den


def _green_diagonal_fn(kernel):
    # G(theta, theta) with the endpoint data computed once
    big = kernel.theta_total
    p0 = kernel.point(0.0)
    pb = kernel.point(big)
    whole = p0.eta_a * pb.eta_b - pb.eta_a * p0.eta_b

    def diag(theta):
        p = kernel.point(theta)
        left = p0.eta_a * p.eta_b - p.eta_a * p0.eta_b
        right = p.eta_a * pb.eta_b - pb.eta_a * p.eta_b
        return left * right / whole

    return diag


def first_correction_a1(q_t, theta, *, epsrel=A1_EPSREL):
    """``a1 = (3/4) int_0^Theta G(theta, theta)^2 dtheta``.

    The diagonal is symmetric about ``Theta/2``, so only half the interval
    is integrated.
    """
    kernel = build_kernel(q_t, theta)
    diag = _green_diagonal_fn(kernel)
    value, _ = _numerics.quad(lambda x: diag(x) ** 2, 0.0, 0.5 * theta, epsrel=epsrel)
    return 1.5 * value


def first_correction_a1_velocity_form(q_t, theta, *, epsrel=A1_EPSREL):
    """``a1`` through ``qdot^4 [Q^2 - Q(0)^2]^2 / (4 Q(0)^2)``.

    This is independent of the Green-function route.  ``Q`` diverges at
    ``Theta/2``, which is never a quadrature node.
    """
    kernel = build_kernel(q_t, theta)
    q0sq = kernel.q_zero**2

    def f(x):
        qd = kernel.eta_a(x)
        qq = q_function(kernel, x)
        return (qd * qd * (qq * qq - q0sq)) ** 2 / (4.0 * q0sq)

    value, _ = _numerics.quad(f, 0.0, 0.5 * theta, epsrel=epsrel)
    return 1.5 * value


def harmonic_a1(theta):
    """Closed form of ``a1`` for the harmonic kernel (``q_t = 0``)."""
    ch = math.cosh(theta)
    sh = math.sinh(theta)
    return 0.75 * (theta * ch * ch + 0.5 * theta - 0.75 * math.sinh(2.0 * theta)) / (4.0 * sh * sh)


def z_corrected(theta, g, *, epsrel=1e-8):
    """``Z2`` with the first correction, ``int D exp(-I/g) [1 - g a1] dq_t``."""
    _check(theta, g, allow_zero=True)
    if g == 0.0:
        z = _harmonic_z(theta)
        return SeriesResult(theta, g, z, 0.0, 0.0, 0.0, z)
    base = z2(theta, g)
    weighted, err = _turning_integral(
        theta, g, lambda q: first_correction_a1(q, theta, epsrel=1e-9), epsrel
    )
    weighted *= g
    return SeriesResult(
        theta=theta,
        g=g,
        z2=base.z2,
        validity=base.validity,
        quad_error=base.quad_error + g * err,
        correction_a1_weighted=weighted,
        z_corrected=base.z2 - weighted,
    )


def _log_z(source, g, spec=None):
    if source is HeatSource.SEMICLASSICAL:
        return lambda th: math.log(z2(th, g).z2)
    if source is HeatSource.CLASSICAL:
        return lambda th: math.log(z2_high_t(th, g))
    if source is HeatSource.ORACLE:
        return lambda th: math.log(oracle.exact_z(th, g, spec))
    raise DomainError(f"unknown heat source {source!r}")


def specific_heat(theta, g, source=HeatSource.SEMICLASSICAL, *, spectrum=None):
    """``C = Theta^2 d^2 ln Z / dTheta^2`` by Richardson-extrapolated differences.

    The base step is ``1e-3 Theta``.  For the oracle source a precomputed
    ``spectrum`` may be passed; it must hold enough levels for
    ``Theta (1 - 2e-3)``.
    """
    source = HeatSource(source)
    _check(theta, g)
    if source is HeatSource.SEMICLASSICAL and validity(theta, g) > 1.0:
        warnings.warn(
            f"g Theta^3 / 40 = {validity(theta, g):.3g} > 1: quadratic order is unreliable",
            ValidityWarning,
            stacklevel=2,
        )
    f = _log_z(source, g, spectrum)
    d2 = _numerics.richardson_second_derivative(f, theta, 1e-3 * theta, levels=2)
    return ThermoPoint(theta, theta * theta * d2, source)

"""Real elliptic integrals and Jacobi elliptic functions.

Everything here takes a :class:`Modulus`, which carries both ``k`` and the
complementary modulus ``k_prime``.  Near ``k = 1`` the complement is the
accurate quantity (``1 - k**2`` cancels catastrophically), so every routine
that cares is written in terms of ``k_prime``.

Algorithms:

* complete integrals: arithmetic-geometric mean;
* incomplete second kind: Carlson's symmetric forms R_F and R_D, with the
  radicand built as ``cos^2 + k'^2 sin^2``;
* sn, cn, dn: Bulirsch's descending Landen (Gauss) transformation, driven by
  ``k'^2`` directly, with a hyperbolic branch at ``k -> 1``.
"""

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "Modulus",
    "JacobiTriple",
    "complete_k",
    "complete_e",
    "incomplete_e",
    "jacobi",
    "jacobi_epsilon",
    "epsilon_from_triple",
    "carlson_rf",
    "carlson_rd",
]

MAX_ITER = 50
_EPS = 2.220446049250313e-16
# Landen iteration stops once a and b agree to this; the next AGM step is then exact.
_LANDEN_TOL = 1e-8
# sn -> tanh, cn, dn -> sech once k' is below this and k' cosh(u) is too,
# so the dropped O(k'^2 cosh^2 u) terms sit under rounding
_KPRIME_HYPERBOLIC = 1e-8
_JACOBI_U_MAX = 1e4


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus ``k`` together with ``k_prime = sqrt(1 - k^2)``."""

    k: float
    k_prime: float

    def __post_init__(self):
        k, kp = self.k, self.k_prime
        if not (0.0 <= k <= 1.0) or not (0.0 <= kp <= 1.0):
            raise DomainError(f"modulus out of range: k={k}, k'={kp}")
        if abs((k * k - 1.0) + kp * kp) > 4 * _EPS:
            raise DomainError(f"inconsistent modulus pair: k={k}, k'={kp}")

    @classmethod
    def from_k(cls, k):
        k = float(k)
        if not 0.0 <= k <= 1.0:
            raise DomainError(f"modulus k={k} outside [0, 1]")
        return cls(k, math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_complement(cls, k_prime):
        kp = float(k_prime)
        if not 0.0 <= kp <= 1.0:
            raise DomainError(f"complementary modulus k'={kp} outside [0, 1]")
        return cls(math.sqrt((1.0 - kp) * (1.0 + kp)), kp)

    @classmethod
    def from_parameters(cls, k_sq, k_prime_sq):
        """Build from ``k^2`` and ``k'^2`` computed independently by the caller."""
        total = k_sq + k_prime_sq
        return cls(math.sqrt(k_sq / total), math.sqrt(k_prime_sq / total))

    @property
    def m(self):
        return self.k * self.k

    @property
    def m_prime(self):
        return self.k_prime * self.k_prime


@dataclass(frozen=True)
class JacobiTriple:
    sn: float
    cn: float
    dn: float


def _agm_sequence(kp):
    # yields list of c_n for n >= 1 and the final mean
    a, b = 1.0, kp
    cs = []
    for _ in range(MAX_ITER):
        if abs(a - b) <= _EPS * a:
            return a, cs
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        cs.append(c)
    raise ConvergenceError("AGM iteration did not converge")


def complete_k(m):
    """Complete elliptic integral of the first kind, K(k)."""
    if m.k_prime <= 0.0:
        raise DomainError("K(k) diverges at k = 1")
    a, _ = _agm_sequence(m.k_prime)
    return math.pi / (2.0 * a)


def complete_e(m):
    """Complete elliptic integral of the second kind, E(k)."""
    if m.k_prime <= 0.0:
        return 1.0
    a, cs = _agm_sequence(m.k_prime)
    # E/K = 1 - sum_{n>=0} 2^(n-1) c_n^2, with 1 - c_0^2/2 = (1 + k'^2)/2
    s = 0.5 * (1.0 + m.m_prime)
    w = 0.5
    for c in cs:
        w *= 2.0
        s -= w * c * c
    return math.pi / (2.0 * a) * s


def carlson_rf(x, y, z):
    """Carlson's symmetric integral R_F(x, y, z); at most one argument may be 0."""
    if min(x, y, z) < 0.0 or (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise DomainError(f"R_F({x}, {y}, {z}) undefined")
    x0, y0 = x, y
    a0 = (x + y + z) / 3.0
    q = (3.0 * _EPS) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    f = 1.0
    for _ in range(MAX_ITER):
        if q * f < abs(a):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        a = 0.25 * (a + lam)
        f *= 0.25
    else:
        raise ConvergenceError("R_F duplication did not converge")
    X = (a0 - x0) * f / a
    Y = (a0 - y0) * f / a
    Z = -(X + Y)
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    poly = (
        1.0
        - e2 / 10.0
        + e3 / 14.0
        + e2 * e2 / 24.0
        - 3.0 * e2 * e3 / 44.0
        - 5.0 * e2**3 / 208.0
        + 3.0 * e3 * e3 / 104.0
        + e2 * e2 * e3 / 16.0
    )
    return poly / math.sqrt(a)


def carlson_rd(x, y, z):
    """Carlson's integral R_D(x, y, z) = R_J(x, y, z, z); needs z > 0."""
    if min(x, y) < 0.0 or z <= 0.0 or (x == 0.0 and y == 0.0):
        raise DomainError(f"R_D({x}, {y}, {z}) undefined")
    x0, y0 = x, y
    a0 = (x + y + 3.0 * z) / 5.0
    q = (0.25 * _EPS) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    f = 1.0
    tail = 0.0
    for _ in range(MAX_ITER):
        if q * f < abs(a):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        tail += f / (sz * (z + lam))
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        a = 0.25 * (a + lam)
        f *= 0.25
    else:
        raise ConvergenceError("R_D duplication did not converge")
    X = (a0 - x0) * f / a
    Y = (a0 - y0) * f / a
    Z = -(X + Y) / 3.0
    xy = X * Y
    zz = Z * Z
    e2 = xy - 6.0 * zz
    e3 = (3.0 * xy - 8.0 * zz) * Z
    e4 = 3.0 * (xy - zz) * zz
    e5 = xy * zz * Z
    poly = (
        1.0
        - 3.0 * e2 / 14.0
        + e3 / 6.0
        + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0
    )
    return f * poly / (a * math.sqrt(a)) + 3.0 * tail


def _e_reduced(sin_p, cos_p, m):
    # E(psi, k) for |psi| <= pi/2 from sin and cos of psi; radicand uses k' to stay accurate
    if sin_p == 0.0:
        return 0.0
    if m.k_prime == 0.0:
        return sin_p
    c2 = cos_p * cos_p
    d2 = c2 + m.m_prime * sin_p * sin_p
    return sin_p * carlson_rf(c2, d2, 1.0) - m.m * sin_p**3 * carlson_rd(c2, d2, 1.0) / 3.0


def incomplete_e(phi, m):
    """Incomplete elliptic integral of the second kind, E(phi, k), any real phi."""
    n = round(phi / math.pi)
    psi = phi - n * math.pi
    value = _e_reduced(math.sin(psi), math.cos(psi), m)
    if n:
        value += 2.0 * n * complete_e(m)
    return value


def _sech(u):
    t = math.exp(-abs(u))
    return 2.0 * t / (1.0 + t * t)


def jacobi(u, m):
    """Jacobi elliptic functions ``sn, cn, dn`` of real argument ``u``."""
    if not abs(u) <= _JACOBI_U_MAX:
        raise DomainError(f"|u| = {abs(u)} exceeds the supported range {_JACOBI_U_MAX}")
    kp = m.k_prime
    if m.k == 0.0:
        return JacobiTriple(math.sin(u), math.cos(u), 1.0)
    if abs(u) < 1e-8:
        # next terms are O(u^3), below rounding
        h = 0.5 * u * u
        return JacobiTriple(u, 1.0 - h, 1.0 - m.m * h)
    if kp < _KPRIME_HYPERBOLIC and kp * math.cosh(min(abs(u), 700.0)) < _KPRIME_HYPERBOLIC:
        s = _sech(u)
        return JacobiTriple(math.tanh(u), s, s)

    emc = kp * kp
    a = 1.0
    dn = 1.0
    em = []
    en = []
    for _ in range(MAX_ITER):
        em.append(a)
        emc = math.sqrt(emc)
        en.append(emc)
        c = 0.5 * (a + emc)
        if abs(a - emc) <= _LANDEN_TOL * a:
            break
        emc *= a
        a = c
    else:
        raise ConvergenceError("Landen transformation did not converge")
    u *= c
    sn = math.sin(u)
    cn = math.cos(u)
    if sn != 0.0:
        a = cn / sn
        c *= a
        for b, e in zip(reversed(em), reversed(en)):
            a *= c
            c *= dn
            dn = (e + a) / (b + a)
            a = c / b
        a = 1.0 / math.sqrt(c * c + 1.0)
        sn = a if sn >= 0.0 else -a
        cn = c * sn
    return JacobiTriple(sn, cn, dn)


def epsilon_from_triple(t, m):
    """E(am u, k) from a precomputed triple, valid for ``|u| <= K(k)`` (``cn >= 0``)."""
    return _e_reduced(t.sn, max(t.cn, 0.0), m)


def jacobi_epsilon(u, m, triple=None):
    """Jacobi's epsilon function E(am u, k) = integral of dn^2 from 0 to u.

    ``triple`` may carry a precomputed ``jacobi(u, m)`` when ``|u| <= K(k)``.
    """
    if m.k_prime == 0.0:
        return math.tanh(u)
    kk = complete_k(m)
    if abs(u) <= kk:
        t = jacobi(u, m) if triple is None else triple
        return _e_reduced(t.sn, max(t.cn, 0.0), m)
    n = round(u / (2.0 * kk))
    r = u - 2.0 * n * kk
    t = jacobi(r, m)
    return 2.0 * n * complete_e(m) + _e_reduced(t.sn, max(t.cn, 0.0), m)

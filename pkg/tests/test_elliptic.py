import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiclassical.elliptic import (
    Modulus,
    carlson_rd,
    carlson_rf,
    complete_e,
    complete_k,
    incomplete_e,
    jacobi,
    jacobi_epsilon,
)
from semiclassical.errors import DomainError

# ellipk/ellipe near m = 1 need the extra digits
mpmath.mp.dps = 60

moduli = st.floats(min_value=0.0, max_value=0.999999, allow_nan=False)
small_kp = st.floats(min_value=1e-12, max_value=1e-3)


def mp_jacobi(u, kp):
    m = 1 - mpmath.mpf(kp) ** 2
    return tuple(float(mpmath.ellipfun(f, u, m=m)) for f in ("sn", "cn", "dn"))


def test_modulus_validates_pair():
    with pytest.raises(DomainError):
        Modulus(0.5, 0.5)
    m = Modulus.from_complement(1e-10)
    assert m.k == 1.0 and m.k_prime == 1e-10


def test_complete_integrals_special_values():
    m = Modulus.from_k(0.0)
    assert complete_k(m) == pytest.approx(math.pi / 2, abs=1e-15)
    assert complete_e(m) == pytest.approx(math.pi / 2, abs=1e-15)
    assert complete_e(Modulus.from_k(1.0)) == 1.0
    with pytest.raises(DomainError):
        complete_k(Modulus.from_k(1.0))


@settings(max_examples=60, deadline=None)
@given(moduli)
def test_complete_against_mpmath(k):
    m = Modulus.from_k(k)
    mm = 1 - mpmath.mpf(m.k_prime) ** 2
    assert complete_k(m) == pytest.approx(float(mpmath.ellipk(mm)), rel=2e-15)
    assert complete_e(m) == pytest.approx(float(mpmath.ellipe(mm)), rel=2e-15)


@settings(max_examples=40, deadline=None)
@given(small_kp)
def test_complete_near_k_one(kp):
    m = Modulus.from_complement(kp)
    mm = 1 - mpmath.mpf(kp) ** 2
    assert complete_k(m) == pytest.approx(float(mpmath.ellipk(mm)), rel=4e-15)
    assert complete_e(m) == pytest.approx(float(mpmath.ellipe(mm)), rel=5e-15)


def test_legendre_relation():
    # E K' + E' K - K K' = pi/2, an identity between integrals at k and k'
    for k in (0.1, 0.5, 0.9, 0.99999):
        m, mc = Modulus.from_k(k), Modulus.from_complement(k)
        lhs = complete_e(m) * complete_k(mc) + complete_e(mc) * complete_k(m) - complete_k(m) * complete_k(mc)
        assert lhs == pytest.approx(math.pi / 2, abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(0.0, 10.0), st.floats(0.0, 10.0), st.floats(1e-6, 10.0)
)
def test_carlson_against_mpmath(x, y, z):
    if x == 0.0 and y == 0.0:
        return
    assert carlson_rf(x, y, z) == pytest.approx(float(mpmath.elliprf(x, y, z)), rel=1e-14)
    assert carlson_rd(x, y, z) == pytest.approx(float(mpmath.elliprd(x, y, z)), rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.floats(-7.0, 7.0), moduli)
def test_incomplete_e_against_mpmath(phi, k):
    m = Modulus.from_k(k)
    ref = float(mpmath.ellipe(phi, k * k))
    assert incomplete_e(phi, m) == pytest.approx(ref, rel=1e-14, abs=1e-15)


@settings(max_examples=80, deadline=None)
@given(st.floats(-30.0, 30.0), moduli)
def test_jacobi_against_mpmath(u, k):
    m = Modulus.from_k(k)
    t = jacobi(u, m)
    ref = mp_jacobi(u, m.k_prime)
    for got, want in zip((t.sn, t.cn, t.dn), ref):
        assert got == pytest.approx(want, abs=5e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 20.0), small_kp)
def test_jacobi_near_k_one(u, kp):
    # the regime of low-temperature paths: k' tiny, u comparable to K
    t = jacobi(u, Modulus.from_complement(kp))
    ref = mp_jacobi(u, kp)
    for got, want in zip((t.sn, t.cn, t.dn), ref):
        assert got == pytest.approx(want, rel=1e-12, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.floats(-20.0, 20.0), moduli)
def test_jacobi_identities(u, k):
    m = Modulus.from_k(k)
    t = jacobi(u, m)
    assert t.sn**2 + t.cn**2 == pytest.approx(1.0, abs=1e-12)
    assert t.dn**2 + m.m * t.sn**2 == pytest.approx(1.0, abs=1e-12)


def test_jacobi_quarter_period():
    for k in (0.3, 0.8, 0.999):
        m = Modulus.from_k(k)
        t = jacobi(complete_k(m), m)
        assert t.sn == pytest.approx(1.0, abs=1e-12)
        assert t.cn == pytest.approx(0.0, abs=1e-7)
        assert t.dn == pytest.approx(m.k_prime, abs=1e-7)


def test_jacobi_degenerate_limits():
    t = jacobi(0.7, Modulus.from_k(0.0))
    assert (t.sn, t.cn, t.dn) == (math.sin(0.7), math.cos(0.7), 1.0)
    t = jacobi(0.7, Modulus.from_k(1.0))
    assert t.sn == pytest.approx(math.tanh(0.7), rel=1e-15)
    assert t.cn == pytest.approx(1 / math.cosh(0.7), rel=1e-15)


def test_jacobi_rejects_huge_argument():
    with pytest.raises(DomainError):
        jacobi(1e5, Modulus.from_k(0.5))


@settings(max_examples=50, deadline=None)
@given(st.floats(-25.0, 25.0), moduli)
def test_epsilon_against_mpmath(u, k):
    m = Modulus.from_k(k)
    mm = k * k
    ref = float(mpmath.ellipe(_am(u, mm), mm))
    assert jacobi_epsilon(u, m) == pytest.approx(ref, rel=1e-12, abs=1e-13)


def _am(u, mm):
    # amplitude via the inverse of the incomplete first-kind integral
    return mpmath.findroot(lambda p: mpmath.ellipf(p, mm) - u, u)


def test_epsilon_is_integral_of_dn_squared():
    m = Modulus.from_k(0.9)
    u = 3.7
    ref = mpmath.quad(lambda x: mpmath.ellipfun("dn", x, m=m.m) ** 2, [0, u])
    assert jacobi_epsilon(u, m) == pytest.approx(float(ref), rel=1e-13)


def test_complete_k_against_quadrature():
    from scipy.integrate import quad

    k = 1 / math.sqrt(2)
    ref, _ = quad(lambda x: 1 / math.sqrt(1 - k * k * math.sin(x) ** 2), 0, math.pi / 2, epsabs=0, epsrel=1e-13)
    assert complete_k(Modulus.from_k(k)) == pytest.approx(ref, rel=1e-12)


def test_complete_k_logarithmic_asymptote():
    assert complete_k(Modulus.from_complement(1e-3)) == pytest.approx(math.log(4000), rel=1e-4)


def test_incomplete_e_trivial_cases():
    for phi in (0.3, 1.0):
        assert incomplete_e(phi, Modulus.from_k(0.0)) == pytest.approx(phi, abs=1e-15)
    for k in (0.2, 0.8):
        m = Modulus.from_k(k)
        assert incomplete_e(math.pi / 2, m) == pytest.approx(complete_e(m), rel=1e-14)


def test_incomplete_e_small_kprime_expansion():
    # expansion in q_t^2 ~ 2 k'^2 around k = 1, at fixed amplitude phi = am u
    kp2 = 0.02
    m = Modulus.from_parameters(1 - kp2, kp2)
    phi = 1.0
    q2 = kp2 / (0.5 - kp2)
    sn = math.sin(phi)
    cn = math.cos(phi)
    approx = sn + 0.25 * q2 * (math.log((1 + sn) / cn) - sn)
    assert abs(incomplete_e(phi, m) - approx) < 5 * kp2**2


def test_jacobi_near_one_uses_hyperbolic_forms():
    t = jacobi(1.3, Modulus.from_k(1 - 1e-15))
    assert t.sn == pytest.approx(math.tanh(1.3), abs=1e-12)
    assert t.cn == pytest.approx(1 / math.cosh(1.3), abs=1e-12)
    assert t.dn == pytest.approx(1 / math.cosh(1.3), abs=1e-12)


@pytest.mark.parametrize("k", [0.71, 0.9, 0.999])
def test_identities_on_grid(k):
    m = Modulus.from_k(k)
    for u in np.linspace(-20, 20, 100):
        t = jacobi(u, m)
        assert abs(t.sn**2 + t.cn**2 - 1) < 1e-12
        assert abs(t.dn**2 + m.m * t.sn**2 - 1) < 1e-12


def test_complete_integrals_monotone():
    ks = np.linspace(0, 0.9999, 200)
    kk = [complete_k(Modulus.from_k(k)) for k in ks]
    ee = [complete_e(Modulus.from_k(k)) for k in ks]
    assert np.all(np.diff(kk) > 0)
    assert np.all(np.diff(ee) < 0)


@pytest.mark.parametrize("k", [0.3, 0.9, 0.99])
def test_periodicity_and_derivative(k):
    m = Modulus.from_k(k)
    period = 4 * complete_k(m)
    for u in np.linspace(-3, 3, 13):
        a, b = jacobi(u, m), jacobi(u + period, m)
        assert abs(a.sn - b.sn) < 1e-10 and abs(a.cn - b.cn) < 1e-10 and abs(a.dn - b.dn) < 1e-10
        h = 1e-6
        dsn = (jacobi(u + h, m).sn - jacobi(u - h, m).sn) / (2 * h)
        assert dsn == pytest.approx(a.cn * a.dn, abs=1e-6)

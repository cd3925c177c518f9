import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiclassical import classical as C
from semiclassical.elliptic import Modulus
from semiclassical.errors import DomainError


def low_t_turning(q0, theta):
    return 4 * q0 * math.exp(-theta / 2) / (1 + math.sqrt(1 + q0 * q0 / 2))


def test_velocity_field_values():
    assert C.velocity_field(0.7, 0.7) == 0.0
    assert abs(C.velocity_field(1.0, 0.0)) == pytest.approx(math.sqrt(1.5))
    for q in (0.5, -0.5, 2.0, -2.0):
        v = C.velocity_field(q, 0.0, C.HARMONIC)
        assert abs(v) == pytest.approx(abs(q))
        assert math.copysign(1, v) == math.copysign(1, -q)


def test_velocity_field_rejects_forbidden_region():
    with pytest.raises(DomainError):
        C.velocity_field(0.1, 0.5)


def test_modulus_from_turning_values():
    assert C.modulus_from_turning(0.0).k == 1.0
    assert C.modulus_from_turning(1.0).k == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
    assert C.modulus_from_turning(1e8).k == pytest.approx(1 / math.sqrt(2), abs=1e-10)
    assert C.modulus_from_turning(-0.4) == C.modulus_from_turning(0.4)


def test_modulus_from_theta_limits():
    assert C.modulus_from_theta(1e-6).k - 1 / math.sqrt(2) < 1e-3
    assert C.modulus_from_theta(20.0).k_prime == pytest.approx(4 * math.exp(-10), rel=1e-2)


@pytest.mark.parametrize("theta", [0.1, 1.0, 5.0, 20.0])
def test_theta_modulus_round_trip(theta):
    m = C.modulus_from_theta(theta)
    assert C.period_of_modulus(m) == pytest.approx(theta, rel=1e-12)
    assert C.modulus_from_turning(C.q_plus(theta)).k == pytest.approx(m.k, abs=1e-10)


def test_q_plus_limits():
    assert C.q_plus(20.0) == pytest.approx(4 * math.sqrt(2) * math.exp(-10), rel=1e-2)
    assert C.q_plus(0.01) > 10
    with pytest.raises(DomainError):
        C.q_plus(0.0)


def test_q_plus_high_temperature_asymptote():
    # for large q the period is 2 K(1/sqrt 2) / q
    theta = 1e-3
    assert C.q_plus(theta) == pytest.approx(2 * 1.8540746773013719 / theta, rel=1e-5)


def test_path_at_turning_time():
    assert C.path_point(0.5, 2.0, 1.0) == 0.5
    assert C.path_velocity(0.5, 2.0, 1.0) == 0.0
    for th in (0.0, 0.7, 2.0):
        assert C.path_point(0.0, 2.0, th) == 0.0


def test_path_symmetry():
    for th in np.linspace(0, 3, 11):
        assert C.path_point(0.3, 3.0, th) == pytest.approx(C.path_point(0.3, 3.0, 3.0 - th), rel=1e-14)


def test_equation_of_motion_residual():
    q_t, big = 0.3, 3.0
    h = 1e-4
    for th in np.linspace(0.1, 2.9, 20):
        qm, q0, qp = (C.path_point(q_t, big, th + d) for d in (-h, 0, h))
        acc = (qp - 2 * q0 + qm) / (h * h)
        assert abs(acc - q0 - q0**3) < 1e-6


def test_velocity_matches_path_derivative():
    q_t, big, h = 0.4, 2.5, 1e-6
    for th in (0.2, 0.9, 1.6, 2.3):
        fd = (C.path_point(q_t, big, th + h) - C.path_point(q_t, big, th - h)) / (2 * h)
        assert C.path_velocity(q_t, big, th) == pytest.approx(fd, rel=1e-7, abs=1e-9)


def test_path_beyond_q_plus_is_a_domain_error():
    with pytest.raises(DomainError):
        C.endpoint_from_turning(1.01 * C.q_plus(3.0), 3.0)


def test_endpoint_against_low_temperature_asymptote():
    theta = 10.0
    q_t = C.q_plus(theta) / 2
    q0 = C.endpoint_from_turning(q_t, theta)
    assert low_t_turning(q0, theta) == pytest.approx(q_t, rel=2e-2)
    assert C.turning_from_endpoint(2.0, 12.0) == pytest.approx(low_t_turning(2.0, 12.0), rel=2e-2)


def test_zero_endpoints():
    assert C.endpoint_from_turning(0.0, 2.0) == 0.0
    assert C.turning_from_endpoint(0.0, 2.0) == 0.0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 12.0), st.floats(0.01, 0.99))
def test_turning_endpoint_round_trip(theta, frac):
    q_t = frac * C.q_plus(theta)
    q0 = C.endpoint_from_turning(q_t, theta)
    assert C.turning_from_endpoint(q0, theta) == pytest.approx(q_t, rel=1e-10)


def test_negative_turning_point_parity():
    assert C.endpoint_from_turning(-0.3, 2.0) == -C.endpoint_from_turning(0.3, 2.0)
    assert C.turning_from_endpoint(-1.0, 2.0) == -C.turning_from_endpoint(1.0, 2.0)
    assert C.classical_action(-0.3, 2.0) == C.classical_action(0.3, 2.0)


def test_theta_from_turning_round_trip():
    theta = 3.0
    q_t = C.q_plus(theta) / 2
    q0 = C.endpoint_from_turning(q_t, theta)
    assert C.theta_from_turning(q0, q_t) == pytest.approx(theta, abs=1e-6)
    q0b = 2.0
    assert C.theta_from_turning(q0b, C.turning_from_endpoint(q0b, 12.0)) == pytest.approx(12.0, abs=1e-6)


def test_theta_from_turning_harmonic():
    assert C.theta_from_turning(2.0, 1.0, C.HARMONIC) == pytest.approx(2 * math.acosh(2.0), rel=1e-12)
    assert C.theta_from_turning(1.0001 * 0.5, 0.5) < 0.1


def test_theta_from_turning_rejects_bad_pair():
    with pytest.raises(DomainError):
        C.theta_from_turning(0.5, 1.0)
    with pytest.raises(DomainError):
        C.theta_from_turning(-1.0, 0.5)


def test_monotonicity():
    theta = 4.0
    qs = np.linspace(0, 0.99 * C.q_plus(theta), 50)
    ends = [C.endpoint_from_turning(q, theta) for q in qs]
    assert np.all(np.diff(ends) > 0)
    times = [C.theta_from_turning(1.5, q) for q in np.linspace(0.05, 1.4, 30)]
    assert np.all(np.diff(times) < 0)


def test_action_values():
    assert C.classical_action(0.0, 2.0) == 0.0
    q = 1e-3
    assert C.classical_action(q, 2.0) == pytest.approx(0.5 * q * q * math.sinh(2.0), rel=1e-4)


@pytest.mark.parametrize("q_t,theta", [(0.2, 4.0), (0.5, 1.0), (1.5, 0.5), (1e-3, 8.0), (0.05, 0.3)])
def test_action_closed_form_vs_quadrature(q_t, theta):
    q0 = C.endpoint_from_turning(q_t, theta)
    ref = C.action_from_endpoints(q0, q_t, theta)
    assert C.classical_action(q_t, theta) == pytest.approx(ref, rel=1e-8)


def test_action_positive_and_convex_near_zero():
    theta = 2.0
    qs = np.linspace(0, 0.2, 21)
    acts = np.array([C.classical_action(q, theta) for q in qs])
    assert np.all(acts[1:] > 0)
    assert np.all(np.diff(acts, 2) > 0)


def test_solve_path():
    p = C.solve_path(0.3, 2.0)
    assert p.q0 == C.endpoint_from_turning(0.3, 2.0)
    assert p.action == C.classical_action(0.3, 2.0)
    assert p.modulus == C.modulus_from_turning(0.3)
    assert p.point(1.0) == 0.3
    assert isinstance(p.modulus, Modulus)


def test_generic_well_matches_quartic_closed_form():
    # a hand-built quartic well goes only through the generic quadratures
    well = C.SingleWell(
        u=lambda q: q * q / 2 + q**4 / 4,
        du=lambda q: q + q**3,
        d2u=lambda q: 1 + 3 * q * q,
        d3u=lambda q: 6 * q,
        d4u=lambda q: 6.0,
    )
    q_t, theta = 0.25, 2.5
    q0 = C.endpoint_from_turning(q_t, theta)
    assert C.theta_from_turning(q0, q_t, well) == pytest.approx(theta, rel=1e-10)
    assert C.action_from_endpoints(q0, q_t, theta, well) == pytest.approx(C.classical_action(q_t, theta), rel=1e-10)

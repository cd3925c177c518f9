import math

import numpy as np
import pytest
from scipy.linalg import eigh

from semiclassical import oracle
from semiclassical.errors import DomainError, InsufficientLevelsError
from semiclassical.series import HeatSource, ground_energy, specific_heat

TABLE_EXACT = {0.4: 0.559146, 1.2: 0.637992, 2.0: 0.696176, 4.0: 0.803771, 8.0: 0.951568}


def dense_hamiltonian(g, n):
    # full matrix from ladder operators, independent of the banded parity blocks
    a = np.diag(np.sqrt(np.arange(1.0, n)), 1)
    x = (a + a.T) / math.sqrt(2.0)
    x2 = x @ x
    h = np.diag(np.arange(n) + 0.5) + 0.25 * g * (x2 @ x2)
    # x^4 built from a truncated x is wrong in the last four rows
    return h[: n - 4, : n - 4]


def test_harmonic_levels_exact():
    s = oracle.spectrum(0.0, 10)
    assert s.levels == tuple(n + 0.5 for n in range(10))


@pytest.mark.parametrize("g", sorted(TABLE_EXACT))
def test_table_ground_states(g):
    assert oracle.spectrum(g, 1).ground == pytest.approx(TABLE_EXACT[g], abs=1e-6)


def test_matches_dense_diagonalisation():
    g = 1.2
    ref = eigh(dense_hamiltonian(g, 404), eigvals_only=True)[:12]
    got = oracle.spectrum(g, 12).levels
    assert np.allclose(got, ref, rtol=1e-10, atol=0)


def test_levels_increasing_and_above_harmonic():
    s = oracle.spectrum(0.7, 30)
    lv = np.array(s.levels)
    assert np.all(np.diff(lv) > 0)
    assert np.all(lv >= np.arange(30) + 0.5)


def test_basis_robustness():
    s = oracle.spectrum(0.3, 20)
    again = oracle._levels(0.3, 20, 2 * s.basis_size)
    assert np.max(np.abs(np.array(s.levels) - again)) < 1e-9


def test_ground_state_monotone_in_g():
    gs = [0.05, 0.1, 0.4, 1.0, 3.0, 8.0]
    e = [oracle.spectrum(g, 1).ground for g in gs]
    assert all(b > a for a, b in zip(e, e[1:]))


@pytest.mark.parametrize("g", [0.1, 0.4, 1.2, 2.0, 4.0, 8.0])
def test_variational_bound(g):
    # the Rayleigh quotient can only sit above the true ground state
    assert ground_energy(g) >= oracle.spectrum(g, 1).ground


def test_exact_z_harmonic():
    assert oracle.exact_z(2.0, 0.0) == pytest.approx(0.5 / math.sinh(1.0), rel=1e-10)


def test_exact_z_ground_state_dominance():
    z = oracle.exact_z(40.0, 0.4)
    assert -math.log(z) / 40.0 == pytest.approx(0.559146, abs=1e-4)


def test_exact_z_needs_enough_levels():
    short = oracle.spectrum(0.3, 5)
    with pytest.raises(InsufficientLevelsError) as info:
        oracle.exact_z(1.0, 0.3, short)
    assert info.value.required > 5
    enough = oracle.spectrum(0.3, info.value.required)
    assert oracle.exact_z(1.0, 0.3, enough) == pytest.approx(oracle.exact_z(1.0, 0.3))


def test_exact_z_rejects_wrong_coupling():
    with pytest.raises(DomainError):
        oracle.exact_z(1.0, 0.3, oracle.spectrum(0.4, 80))


def test_exact_heat_harmonic():
    c = oracle.exact_specific_heat(1.0, 0.0).specific_heat
    assert c == pytest.approx(0.25 / math.sinh(0.5) ** 2, abs=1e-10)


def test_exact_heat_classical_limit():
    assert oracle.exact_specific_heat(0.05, 1e-6).specific_heat == pytest.approx(1.0, abs=1e-3)


def test_exact_heat_matches_finite_differences():
    exact = oracle.exact_specific_heat(2.0, 0.3).specific_heat
    fd = specific_heat(2.0, 0.3, HeatSource.ORACLE).specific_heat
    assert fd == pytest.approx(exact, abs=1e-5)


def test_levels_required_tail_bound():
    theta = 0.7
    n = oracle.levels_required(theta)
    tail = math.exp(-theta * (n + 0.5)) / -math.expm1(-theta)
    assert tail < 1e-12 * math.exp(-0.5 * theta)
    tail_prev = math.exp(-theta * (n - 0.5)) / -math.expm1(-theta)
    assert tail_prev >= 1e-12 * math.exp(-0.5 * theta)

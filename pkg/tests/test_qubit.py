from __future__ import annotations

import math

import numpy as np
import pytest

from sqotto import (
    dephase,
    eigenbasis,
    gibbs_state,
    kl_divergence,
    mean_excitation,
    relative_entropy_of_coherence,
    trace_distance,
    von_neumann_entropy,
)
from sqotto.qubit import (
    SIGMA_X,
    SIGMA_Z,
    assert_state,
    coherence_of_rep,
    dephase_rep,
    gibbs_rep,
    hermitize,
    mean_excitation_rep,
)

from conftest import random_rep


def test_eigenbasis_sigma_x_orders_and_phases():
    basis = eigenbasis(0.5 * SIGMA_X)
    assert basis.energies[0] == pytest.approx(-0.5, abs=1e-15)
    assert basis.energies[1] == pytest.approx(0.5, abs=1e-15)
    # ground state of sigma_x/2 is (|0> - |1>)/sqrt(2); the leading
    # component (tie broken toward the lowest index) is made real positive
    np.testing.assert_allclose(basis.ground, [1 / math.sqrt(2), -1 / math.sqrt(2)], atol=1e-15)
    np.testing.assert_allclose(basis.excited, [1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)
    assert basis.gap == pytest.approx(1.0)


def test_eigenbasis_sigma_z_ground_is_lower_spinor():
    basis = eigenbasis(0.5 * SIGMA_Z)
    np.testing.assert_allclose(basis.ground, [0.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(basis.excited, [1.0, 0.0], atol=1e-15)


def test_eigenbasis_roundtrip_representation():
    rng = np.random.default_rng(3)
    ham = 0.3 * SIGMA_X + 0.9 * SIGMA_Z
    basis = eigenbasis(ham)
    rep = random_rep(rng)
    rho = basis.from_rep(rep)
    np.testing.assert_allclose(basis.to_rep(rho), rep, atol=1e-14)
    # diagonal of the rep must be the eigenbasis populations
    p_g = np.real(np.conj(basis.ground) @ rho @ basis.ground)
    assert rep[0, 0].real == pytest.approx(p_g, abs=1e-14)


def test_entropy_of_known_mixture():
    rho = np.diag([0.8, 0.2]).astype(complex)
    # -(0.8 ln 0.8 + 0.2 ln 0.2)
    assert von_neumann_entropy(rho) == pytest.approx(0.5004024235381879, rel=1e-12)
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(math.log(2), rel=1e-12)
    assert von_neumann_entropy(np.diag([1.0, 0.0])) == pytest.approx(0.0, abs=1e-12)


def test_dephase_keeps_populations_and_kills_coherence():
    rng = np.random.default_rng(11)
    basis = eigenbasis(0.4 * SIGMA_X + 0.2 * SIGMA_Z)
    rho = basis.from_rep(random_rep(rng))
    rho_d = dephase(rho, basis)
    rep_d = basis.to_rep(rho_d)
    assert abs(rep_d[0, 1]) < 1e-15
    assert rep_d[0, 0].real == pytest.approx(basis.to_rep(rho)[0, 0].real, abs=1e-14)
    assert relative_entropy_of_coherence(rho_d, basis) == pytest.approx(0.0, abs=1e-12)


def test_coherence_is_entropy_gap_of_dephasing():
    rng = np.random.default_rng(5)
    basis = eigenbasis(0.5 * SIGMA_X)
    rep = random_rep(rng)
    rho = basis.from_rep(rep)
    gap = von_neumann_entropy(dephase(rho, basis)) - von_neumann_entropy(rho)
    assert relative_entropy_of_coherence(rho, basis) == pytest.approx(gap, abs=1e-12)
    assert coherence_of_rep(rep) == pytest.approx(gap, abs=1e-12)
    assert coherence_of_rep(dephase_rep(rep)) == pytest.approx(0.0, abs=1e-14)


def test_kl_divergence_of_known_diagonals():
    rho = np.diag([0.75, 0.25]).astype(complex)
    ref = np.eye(2, dtype=complex) / 2.0
    # 0.75 ln(1.5) + 0.25 ln(0.5)
    assert kl_divergence(rho, ref) == pytest.approx(0.1308120359411370, rel=1e-12)
    assert kl_divergence(ref, ref) == pytest.approx(0.0, abs=1e-12)


def test_kl_divergence_support_mismatch_raises():
    pure = np.diag([1.0, 0.0]).astype(complex)
    mixed = np.diag([0.5, 0.5]).astype(complex)
    with pytest.raises(ValueError):
        kl_divergence(mixed, pure)
    # the other direction is finite: D(pure || mixed) = ln 2
    assert kl_divergence(pure, mixed) == pytest.approx(math.log(2), rel=1e-12)


def test_kl_divergence_splits_into_dephased_part_plus_coherence():
    # D(rho || ref) = D(dephase(rho) || ref) + C(rho) when ref is diagonal
    # in the basis used for dephasing.
    rng = np.random.default_rng(8)
    basis = eigenbasis(0.5 * SIGMA_X)
    rho = basis.from_rep(random_rep(rng))
    ref = basis.from_rep(np.diag([0.65, 0.35]).astype(complex))
    lhs = kl_divergence(rho, ref)
    rhs = kl_divergence(dephase(rho, basis), ref) + relative_entropy_of_coherence(rho, basis)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_gibbs_state_populations():
    ham = 1.0 * SIGMA_Z  # gap 2
    rho = gibbs_state(ham, beta=1.0)
    rep = gibbs_rep(2.0, 1.0)
    p_e = 1.0 / (1.0 + math.exp(2.0))
    assert rep[1, 1].real == pytest.approx(p_e, rel=1e-12)
    basis = eigenbasis(ham)
    assert mean_excitation(rho, basis) == pytest.approx(p_e - 0.5, rel=1e-12)
    assert mean_excitation_rep(rep) == pytest.approx(p_e - 0.5, rel=1e-12)
    # infinite temperature limit
    np.testing.assert_allclose(gibbs_rep(2.0, 0.0), np.eye(2) / 2, atol=1e-15)


def test_gibbs_state_handles_extreme_beta():
    rho = gibbs_state(0.5 * SIGMA_Z, beta=1e6)
    assert rho[1, 1].real == pytest.approx(1.0, abs=1e-12)  # ground of sigma_z


def test_assert_state_rejects_bad_matrices():
    with pytest.raises(ValueError):
        assert_state(np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex))  # not hermitian
    with pytest.raises(ValueError):
        assert_state(np.diag([0.9, 0.3]).astype(complex))  # trace != 1
    with pytest.raises(ValueError):
        assert_state(np.diag([1.2, -0.2]).astype(complex))  # negative eigenvalue
    ok = np.diag([0.7, 0.3]).astype(complex)
    np.testing.assert_array_equal(assert_state(ok), ok)


def test_trace_distance_basics():
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    assert trace_distance(a, b) == pytest.approx(1.0, rel=1e-12)
    assert trace_distance(a, a) == pytest.approx(0.0, abs=1e-14)
    c = np.diag([0.75, 0.25]).astype(complex)
    assert trace_distance(a, c) == pytest.approx(0.25, rel=1e-12)


def test_hermitize_symmetrizes():
    mat = np.array([[1.0, 0.2 + 0.1j], [0.1, 2.0]], dtype=complex)
    herm = hermitize(mat)
    np.testing.assert_allclose(herm, herm.conj().T, atol=0)

from __future__ import annotations

import math

import numpy as np
import pytest

from sqotto import (
    BathSpec,
    effective_inverse_temperature,
    evolve_cold_analytic,
    evolve_hot_analytic,
    evolve_numeric,
    kl_divergence,
    relaxation_time,
    squeezed_occupation,
    steady_state_rep,
    thermal_occupation,
    trace_distance,
)
from sqotto.bath import COLD, HOT, decay_rate

from conftest import BETA_C, BETA_H, OMEGA_C, OMEGA_H, random_rep


def hot_spec(r: float = 0.0, theta: float = 0.0) -> BathSpec:
    return BathSpec(omega=OMEGA_H, beta=BETA_H, gamma=1.0, r=r, theta=theta, kind=HOT)


def cold_spec() -> BathSpec:
    return BathSpec(omega=OMEGA_C, beta=BETA_C, gamma=1.0, kind=COLD)


def test_thermal_occupations_at_working_point():
    # beta omega = 1/2 on the hot contact, 2 on the cold one
    assert thermal_occupation(hot_spec()) == pytest.approx(1.5414940825367982, rel=1e-12)
    assert thermal_occupation(cold_spec()) == pytest.approx(0.15651764274966565, rel=1e-12)


def test_squeezed_occupation_matches_hyperbolic_form():
    n_th = thermal_occupation(hot_spec())
    expected = n_th * math.cosh(2.0) + math.sinh(1.0) ** 2
    assert squeezed_occupation(hot_spec(r=1.0)) == pytest.approx(expected, rel=1e-12)
    assert squeezed_occupation(hot_spec(r=1.0)) == pytest.approx(7.180500240692673, rel=1e-12)
    # squeezing only ever raises the occupation
    assert squeezed_occupation(hot_spec(r=0.5)) > n_th


def test_relaxation_times_at_working_point():
    assert relaxation_time(hot_spec()) == pytest.approx(0.24491866240370916, rel=1e-12)
    assert relaxation_time(cold_spec()) == pytest.approx(0.761594155955765, rel=1e-12)
    assert relaxation_time(hot_spec()) == pytest.approx(1.0 / decay_rate(hot_spec()), rel=1e-15)
    # squeezing accelerates relaxation
    assert relaxation_time(hot_spec(r=1.0)) < relaxation_time(hot_spec())


def test_effective_inverse_temperature_inverts_the_bose_factor():
    spec = hot_spec(r=1.0)
    beta_eff = effective_inverse_temperature(spec)
    n_ss = squeezed_occupation(spec)
    assert 1.0 / math.expm1(beta_eff * spec.omega) == pytest.approx(n_ss, rel=1e-12)
    assert beta_eff * OMEGA_H == pytest.approx(0.13038425082486949, rel=1e-12)
    # r = 0 recovers the physical temperature
    assert effective_inverse_temperature(hot_spec()) == pytest.approx(BETA_H, rel=1e-12)


def test_cold_bath_rejects_squeezing():
    with pytest.raises(ValueError):
        BathSpec(omega=OMEGA_C, beta=BETA_C, gamma=1.0, r=0.3, kind=COLD)


def test_steady_state_is_stationary_under_both_solvers():
    for spec in (hot_spec(r=1.0, theta=0.7), cold_spec()):
        ss = steady_state_rep(spec)
        tau = 2.0 * relaxation_time(spec)
        evolve = evolve_hot_analytic if spec.kind == HOT else evolve_cold_analytic
        assert trace_distance(evolve(ss, spec, tau).final, ss) < 1e-14
        assert trace_distance(evolve_numeric(ss, spec, tau, steps=2000).final, ss) < 1e-9


def test_relaxation_reaches_the_asymptote():
    # the squeezing-protected coherence quadrature relaxes at
    # (Gamma - gamma a)/2, much slower than the population rate Gamma,
    # so convergence must be clocked against that rate
    rng = np.random.default_rng(4)
    spec = hot_spec(r=1.0, theta=0.3)
    rep0 = random_rep(rng)
    gamma_a = spec.gamma * math.sinh(2 * spec.r) * (2 * thermal_occupation(spec) + 1)
    slow = decay_rate(spec) - gamma_a
    sol = evolve_hot_analytic(rep0, spec, 24.0 / slow)
    np.testing.assert_allclose(sol.asymptote, steady_state_rep(spec), atol=1e-14)
    assert trace_distance(sol.final, sol.asymptote) < 1e-4
    # populations alone do settle within a few relaxation times
    short = evolve_hot_analytic(rep0, spec, 12.0 * relaxation_time(spec)).final
    assert abs(short[1, 1].real - sol.asymptote[1, 1].real) < 1e-5


def test_zero_time_returns_initial_state():
    rng = np.random.default_rng(6)
    rep0 = random_rep(rng)
    sol = evolve_hot_analytic(rep0, hot_spec(r=0.8), 1.0)
    np.testing.assert_allclose(sol.state_at(0.0), rep0, atol=1e-15)


def test_state_at_rejects_out_of_window_times():
    sol = evolve_cold_analytic(np.eye(2, dtype=complex) / 2, cold_spec(), 0.5)
    with pytest.raises(ValueError):
        sol.state_at(-0.1)
    with pytest.raises(ValueError):
        sol.state_at(0.6)


def test_numeric_solver_rejects_step_underflow():
    with pytest.raises(ValueError):
        evolve_numeric(np.eye(2, dtype=complex) / 2, hot_spec(), 0.1, steps=50)


def test_divergence_to_steady_state_decays_monotonically():
    rng = np.random.default_rng(9)
    spec = hot_spec(r=1.0, theta=1.1)
    rep0 = random_rep(rng)
    ss = steady_state_rep(spec)
    sol = evolve_hot_analytic(rep0, spec, 5.0 * relaxation_time(spec))
    times = np.linspace(0.0, sol.duration, 40)
    divs = [kl_divergence(sol.state_at(t), ss) for t in times]
    assert all(b <= a + 1e-12 for a, b in zip(divs, divs[1:]))


def test_coherence_envelope_respects_protected_quadrature_bound():
    # |c(t)| <= |c(0)| exp(-(Gamma - gamma a) t / 2): the slowest coherence
    # quadrature decays at the squeezing-protected rate
    rng = np.random.default_rng(12)
    spec = hot_spec(r=1.5, theta=0.9)
    rep0 = random_rep(rng)
    gamma_a = spec.gamma * math.sinh(2 * spec.r) * (2 * thermal_occupation(spec) + 1)
    slow = decay_rate(spec) - gamma_a
    assert slow > 0
    sol = evolve_hot_analytic(rep0, spec, 3.0 * relaxation_time(spec))
    c0 = abs(rep0[1, 0])
    for t in np.linspace(0.0, sol.duration, 25):
        assert abs(sol.state_at(t)[1, 0]) <= c0 * math.exp(-0.5 * slow * t) + 1e-12


def test_analytic_matches_numeric_integration():
    rng = np.random.default_rng(15)
    rep0 = random_rep(rng)
    spec = hot_spec(r=1.0, theta=0.3)
    tau = 2.0 * relaxation_time(spec)
    sol_a = evolve_hot_analytic(rep0, spec, tau)
    sol_n = evolve_numeric(rep0, spec, tau, steps=4000)
    for t in np.linspace(0.0, tau, 7):
        assert trace_distance(sol_a.state_at(t), sol_n.state_at(t)) < 1e-6


def test_cold_relaxation_is_thermal_special_case():
    # the cold kernel must agree with the hot kernel evaluated at r = 0
    rng = np.random.default_rng(18)
    rep0 = random_rep(rng)
    cold = cold_spec()
    hot_like = BathSpec(omega=OMEGA_C, beta=BETA_C, gamma=1.0, r=0.0, kind=HOT)
    tau = 1.5 * relaxation_time(cold)
    a = evolve_cold_analytic(rep0, cold, tau)
    b = evolve_hot_analytic(rep0, hot_like, tau)
    for t in np.linspace(0.0, tau, 9):
        assert trace_distance(a.state_at(t), b.state_at(t)) < 1e-14

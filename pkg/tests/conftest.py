from __future__ import annotations

import numpy as np
import pytest

from sqotto import CycleConfig, find_limit_cycle

# Desk-scale working point shared across the suite: omega_c/2pi = 2 kHz,
# omega_h/2pi = 3.6 kHz, beta_c omega_c = 2, beta_h omega_h = 1/2,
# gamma = 1 Hz on both contacts (hbar = k_B = 1 throughout).
OMEGA_C = 4000.0 * np.pi
OMEGA_H = 7200.0 * np.pi
BETA_C = 2.0 / OMEGA_C
BETA_H = 0.5 / OMEGA_H


def make_config(**overrides) -> CycleConfig:
    params: dict = dict(
        omega_c=OMEGA_C,
        omega_h=OMEGA_H,
        beta_c=BETA_C,
        beta_h=BETA_H,
        gamma_c=1.0,
        gamma_h=1.0,
        tau_dri=460e-6,
        tau_h=75.15e-3,
        tau_c=5.0,
    )
    params.update(overrides)
    return CycleConfig(**params)


def random_config(rng: np.random.Generator, **overrides) -> CycleConfig:
    """Draw a cycle configuration from the stress grid used by the oracles.

    Squeezing r in [0, 2] with an unconstrained phase, hot contact between
    10 ms and 1 s, drive between 50 us and 1 ms.
    """
    params: dict = dict(
        r=rng.uniform(0.0, 2.0),
        theta=rng.uniform(0.0, 2.0 * np.pi),
        tau_h=rng.uniform(10e-3, 1.0),
        tau_dri=rng.uniform(50e-6, 1e-3),
    )
    params.update(overrides)
    return make_config(**params)


def random_rep(rng: np.random.Generator) -> np.ndarray:
    """Random valid qubit state in an energy-basis representation."""
    vec = rng.normal(size=3)
    vec *= rng.uniform(0.0, 0.999) / np.linalg.norm(vec)
    x, y, z = vec
    return np.array(
        [[0.5 + z / 2.0, (x + 1j * y) / 2.0], [(x - 1j * y) / 2.0, 0.5 - z / 2.0]],
        dtype=complex,
    )


@pytest.fixture(scope="session")
def base_config() -> CycleConfig:
    return make_config()


@pytest.fixture(scope="session")
def squeezed_config() -> CycleConfig:
    return make_config(r=1.0)


@pytest.fixture(scope="session")
def squeezed_cycle(squeezed_config: CycleConfig):
    return find_limit_cycle(squeezed_config)


@pytest.fixture(scope="session")
def dephased_cycle():
    return find_limit_cycle(make_config(dephased=True))

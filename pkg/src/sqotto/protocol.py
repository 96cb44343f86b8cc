"""Finite-time drive strokes: rotating-frequency Hamiltonian and propagators.

The compression stroke ramps the level splitting from omega_c to omega_h
while rotating the quantization axis from sigma_x to sigma_z over a duration
tau_dri; the expansion stroke traverses the same path backwards.  Because
the Hamiltonian does not commute with itself at different times, a finite
tau_dri generates transitions between the instantaneous energy states
(quantified by xi) and couples initial coherence into the final populations
(quantified by zeta).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qubit import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Z,
    EnergyBasis,
    assert_state,
    eigenbasis,
    hermitize,
)

COMPRESSION = "compression"
EXPANSION = "expansion"

#: below this off-diagonal magnitude the stroke is effectively transitionless
#: and the symmetrizing gauge phase is left at zero
_GAUGE_FLOOR = 1e-13


@dataclass(frozen=True)
class DriveProtocol:
    """One unitary stroke of the cycle.

    Parameters
    ----------
    omega_c, omega_h:
        Level splittings (rad/s) at the cold and hot ends of the ramp.
    tau_dri:
        Stroke duration in seconds.
    direction:
        ``"compression"`` runs cold -> hot, ``"expansion"`` hot -> cold.
    steps:
        Number of midpoint-rule factors used by :func:`propagate`.
    """

    omega_c: float
    omega_h: float
    tau_dri: float
    direction: str = COMPRESSION
    steps: int = 2000

    def __post_init__(self) -> None:
        if not 0.0 < self.omega_c < self.omega_h:
            raise ValueError(
                f"need 0 < omega_c < omega_h, got ({self.omega_c}, {self.omega_h})"
            )
        if self.tau_dri <= 0.0:
            raise ValueError(f"stroke duration must be positive, got {self.tau_dri}")
        if self.direction not in (COMPRESSION, EXPANSION):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")


def drive_hamiltonian(protocol: DriveProtocol, t: float) -> np.ndarray:
    """Instantaneous Hamiltonian at time ``t`` into the stroke.

    During compression the splitting interpolates linearly from omega_c to
    omega_h while the axis rotates from x to z through the angle
    pi*t/(2 tau); expansion retraces the compression path backwards, i.e.
    H_exp(t) = H_comp(tau - t).
    """
    tau = protocol.tau_dri
    if not 0.0 <= t <= tau * (1.0 + 1e-12):
        raise ValueError(f"time {t} outside the stroke window [0, {tau}]")
    s = tau - t if protocol.direction == EXPANSION else t
    omega = protocol.omega_c * (1.0 - s / tau) + protocol.omega_h * (s / tau)
    angle = 0.5 * np.pi * s / tau
    return 0.5 * omega * (np.cos(angle) * SIGMA_X + np.sin(angle) * SIGMA_Z)


def _step_unitaries(protocol: DriveProtocol) -> np.ndarray:
    """Stack of exact midpoint-rule factors exp(-i H(t_mid) dt), shape (steps, 2, 2)."""
    n = protocol.steps
    tau = protocol.tau_dri
    dt = tau / n
    t_mid = (np.arange(n) + 0.5) * dt
    if protocol.direction == EXPANSION:
        t_mid = tau - t_mid
    omega = protocol.omega_c * (1.0 - t_mid / tau) + protocol.omega_h * (t_mid / tau)
    angle = 0.5 * np.pi * t_mid / tau
    # H = (omega/2)(cos(angle) sx + sin(angle) sz) has |v| = omega/2, so each
    # factor is exp(-i phi n.sigma) = cos(phi) I - i sin(phi) n.sigma exactly
    phi = 0.5 * omega * dt
    nx = np.cos(angle)
    nz = np.sin(angle)
    out = np.empty((n, 2, 2), dtype=complex)
    out[:, 0, 0] = np.cos(phi) - 1j * np.sin(phi) * nz
    out[:, 1, 1] = np.cos(phi) + 1j * np.sin(phi) * nz
    out[:, 0, 1] = -1j * np.sin(phi) * nx
    out[:, 1, 0] = -1j * np.sin(phi) * nx
    return out


def _ordered_product(factors: np.ndarray) -> np.ndarray:
    """Time-ordered product U = F_{n-1} ... F_1 F_0 via pairwise tree reduction."""
    while factors.shape[0] > 1:
        odd_tail = factors[-1] if factors.shape[0] % 2 else None
        factors = np.matmul(factors[1::2], factors[0:-1:2])
        if odd_tail is not None:
            factors = np.concatenate([factors, odd_tail[None]], axis=0)
    return factors[0]


@dataclass(frozen=True)
class PropagatorResult:
    """A stroke unitary together with its energy-basis bookkeeping.

    ``mixed`` is the matrix <out_m| U |in_n> in the deterministic-phase
    eigenbases of the endpoint Hamiltonians; ``chi`` is the relative phase
    of its off-diagonal elements (see :func:`gauged_mixed`); ``xi`` is the
    basis-independent transition probability |mixed[1, 0]|^2.
    """

    unitary: np.ndarray
    basis_in: EnergyBasis
    basis_out: EnergyBasis
    mixed: np.ndarray
    chi: float
    xi: float
    protocol: DriveProtocol


def _off_diagonal_phase(mixed: np.ndarray) -> float:
    """Phase mismatch chi = arg(M_eg * conj(M_ge)) of a mixed propagator matrix."""
    if min(abs(mixed[0, 1]), abs(mixed[1, 0])) < _GAUGE_FLOOR:
        return 0.0
    return float(np.angle(mixed[1, 0] * np.conj(mixed[0, 1])))


def gauged_mixed(result: PropagatorResult) -> np.ndarray:
    """Mixed propagator matrix in the symmetrizing gauge.

    Re-phasing both excited basis vectors by exp(i chi / 2) makes the two
    off-diagonal elements equal, which is the representation in which the
    closed-form population/coherence bookkeeping of the cycle holds with a
    single real coupling zeta per stroke.
    """
    phase = np.exp(0.5j * result.chi)
    scale = np.diag([1.0, phase]).astype(complex)
    return scale.conj().T @ result.mixed @ scale


def gauge_rep(result: PropagatorResult, rep_in: np.ndarray) -> np.ndarray:
    """Re-express an input-basis representation in the stroke's symmetrizing gauge."""
    phase = np.exp(0.5j * result.chi)
    scale = np.diag([1.0, phase]).astype(complex)
    return scale.conj().T @ np.asarray(rep_in, dtype=complex) @ scale


def gauge_rep_out(result: PropagatorResult, rep_out: np.ndarray) -> np.ndarray:
    """Re-express an output-basis representation in the stroke's symmetrizing gauge."""
    return gauge_rep(result, rep_out)


def propagate(protocol: DriveProtocol) -> PropagatorResult:
    """Integrate the stroke into a :class:`PropagatorResult`.

    Uses a product of exact midpoint-sampled exponentials; the composition
    error is second order, so doubling ``steps`` reduces it roughly 4x.
    """
    unitary = _ordered_product(_step_unitaries(protocol))
    basis_in = eigenbasis(drive_hamiltonian(protocol, 0.0))
    basis_out = eigenbasis(drive_hamiltonian(protocol, protocol.tau_dri))
    mixed = basis_out.vectors.conj().T @ unitary @ basis_in.vectors
    chi = _off_diagonal_phase(mixed)
    xi = float(abs(mixed[1, 0]) ** 2)
    return PropagatorResult(
        unitary=unitary,
        basis_in=basis_in,
        basis_out=basis_out,
        mixed=mixed,
        chi=chi,
        xi=xi,
        protocol=protocol,
    )


def transition_probability(result: PropagatorResult) -> float:
    """Probability of hopping between instantaneous energy states during the stroke.

    By unitarity the four transition probabilities share a single value
    xi = |<e_out|U|g_in>|^2 = |<g_out|U|e_in>|^2; xi -> 0 in the adiabatic
    limit and -> |<e_out|g_in>|^2 in the sudden limit.
    """
    return result.xi


def coherence_coupling(result: PropagatorResult, rep_in: np.ndarray) -> float:
    """Coupling zeta of input-state coherence into output populations.

    In the symmetrizing gauge, zeta = -Re( M_gg * rho_ge * conj(M_eg) )
    shifts the output ground population by -2*zeta relative to the
    population-only (dephased) prediction.
    """
    mixed = gauged_mixed(result)
    rep = gauge_rep(result, rep_in)
    return float(-np.real(mixed[0, 0] * rep[0, 1] * np.conj(mixed[1, 0])))


def apply_unitary(rho: np.ndarray, unitary: np.ndarray, atol: float = 1e-10) -> np.ndarray:
    """Conjugate a state by a unitary, rejecting non-unitary input."""
    unitary = np.asarray(unitary, dtype=complex)
    if not np.allclose(unitary.conj().T @ unitary, IDENTITY, atol=atol):
        raise ValueError("matrix is not unitary within tolerance")
    rho = assert_state(rho, context="apply_unitary input")
    return hermitize(unitary @ rho @ unitary.conj().T)


def apply_mixed(result: PropagatorResult, rep_in: np.ndarray) -> np.ndarray:
    """Map an input-basis representation to the output basis: M rho M^dag."""
    mixed = result.mixed
    return hermitize(mixed @ np.asarray(rep_in, dtype=complex) @ mixed.conj().T)

"""Isochore relaxation against thermal and squeezed-thermal reservoirs.

States are handled as (ground, excited)-ordered energy-basis representations
of the static stroke Hamiltonian.  A squeezed reservoir relaxes the qubit
toward an effective thermal state with occupation
N_ss = N_th cosh(2r) + sinh^2(r) > N_th, and splits the coherence decay into
two quadratures: the one aligned with the squeezing phase theta decays at
the reduced rate gamma (2 N_th + 1) e^{-2r} / 2, the orthogonal one at the
enhanced e^{+2r} rate.  Setting r = 0 recovers an ordinary thermal bath, so
a single kernel serves both isochores.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qubit import SIGMA_MINUS_REP, SIGMA_PLUS_REP, hermitize

HOT = "hot-squeezed"
COLD = "cold-thermal"


@dataclass(frozen=True)
class BathSpec:
    """A reservoir attached to the qubit during one isochore.

    Parameters
    ----------
    omega:
        Qubit splitting (rad/s) during the isochore.
    beta:
        Reservoir inverse temperature (1/(hbar rad/s) units).
    gamma:
        Spontaneous-emission rate (1/s) at this reservoir's coupling.
    r, theta:
        Squeezing amplitude and phase.  Cold reservoirs are plain thermal
        and must have ``r = 0``.
    kind:
        Either ``"hot-squeezed"`` or ``"cold-thermal"``.
    """

    omega: float
    beta: float
    gamma: float
    r: float = 0.0
    theta: float = 0.0
    kind: str = HOT

    def __post_init__(self) -> None:
        if self.omega <= 0.0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.beta <= 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.r < 0.0:
            raise ValueError(f"squeezing amplitude must be >= 0, got {self.r}")
        if self.kind not in (HOT, COLD):
            raise ValueError(f"unknown reservoir kind {self.kind!r}")
        if self.kind == COLD and self.r != 0.0:
            raise ValueError("cold reservoir is thermal: r must be 0")


def thermal_occupation(spec: BathSpec) -> float:
    """Planck occupation N_th = 1/(e^{beta omega} - 1) at the qubit frequency."""
    return float(1.0 / np.expm1(spec.beta * spec.omega))


def squeezed_occupation(spec: BathSpec) -> float:
    """Effective occupation N_ss = N_th cosh(2r) + sinh^2(r) seen by the qubit."""
    n_th = thermal_occupation(spec)
    return float(n_th * np.cosh(2.0 * spec.r) + np.sinh(spec.r) ** 2)


def _quadrature_asymmetry(spec: BathSpec) -> float:
    """Cross-coupling a = sinh(2r) (2 N_th + 1) between conjugate coherence quadratures."""
    n_th = thermal_occupation(spec)
    return float(np.sinh(2.0 * spec.r) * (2.0 * n_th + 1.0))


def decay_rate(spec: BathSpec) -> float:
    """Total population relaxation rate Gamma = gamma (2 N_ss + 1)."""
    return float(spec.gamma * (2.0 * squeezed_occupation(spec) + 1.0))


def relaxation_time(spec: BathSpec) -> float:
    """Population relaxation timescale 1/Gamma.

    Squeezing increases the effective occupation and therefore *shortens*
    the relaxation time relative to the bare thermal value.
    """
    return 1.0 / decay_rate(spec)


def effective_inverse_temperature(spec: BathSpec) -> float:
    """Inverse temperature whose thermal state matches the relaxation fixed point.

    beta_eff = (1/omega) ln((N_ss + 1)/N_ss); equals ``spec.beta`` exactly
    when r = 0 and decreases (hotter) with squeezing.
    """
    n_ss = squeezed_occupation(spec)
    return float(np.log((n_ss + 1.0) / n_ss) / spec.omega)


def steady_state_rep(spec: BathSpec) -> np.ndarray:
    """Fixed point of the isochore as a (g, e)-ordered representation.

    Diagonal with excited population N_ss/(2 N_ss + 1); any squeezing-phase
    information is absent from the fixed point itself (it only shapes the
    transient coherence decay).
    """
    n_ss = squeezed_occupation(spec)
    p_e = n_ss / (2.0 * n_ss + 1.0)
    return np.diag([1.0 - p_e, p_e]).astype(complex)


def _relax_rep(rep0: np.ndarray, spec: BathSpec, t: float) -> np.ndarray:
    """Exact relaxation map for a (g, e) representation after contact time t.

    Populations decay mono-exponentially toward the fixed point at rate
    Gamma; the coherence c = <e|rho|g> rotates at omega while its two
    quadratures (relative to theta) decay at Gamma/2 -/+ gamma a / 2.
    """
    rep0 = np.asarray(rep0, dtype=complex)
    if t < 0.0:
        raise ValueError(f"contact time must be >= 0, got {t}")
    if t == 0.0:
        return rep0.copy()
    n_ss = squeezed_occupation(spec)
    gamma_a = spec.gamma * _quadrature_asymmetry(spec)
    rate = decay_rate(spec)
    z0 = float(rep0[1, 1].real - rep0[0, 0].real)
    z_ss = -1.0 / (2.0 * n_ss + 1.0)
    z = np.exp(-rate * t) * z0 + (1.0 - np.exp(-rate * t)) * z_ss
    c0 = rep0[1, 0]
    half = 0.5 * gamma_a * t
    envelope = np.exp(-0.5 * rate * t) * (
        np.cosh(half) * c0 + np.exp(1j * spec.theta) * np.sinh(half) * np.conj(c0)
    )
    c = np.exp(-1j * spec.omega * t) * envelope
    p_e = 0.5 * (1.0 + z)
    out = np.array([[1.0 - p_e, np.conj(c)], [c, p_e]], dtype=complex)
    return hermitize(out)


@dataclass(frozen=True)
class IsochoreSolution:
    """Relaxation trajectory of one isochore.

    ``state_at(t)`` returns the (g, e) representation after contact time t;
    ``final`` is the endpoint at the full duration and ``asymptote`` the
    t -> infinity fixed point.
    """

    initial: np.ndarray
    spec: BathSpec
    duration: float
    _numeric_steps: int | None = field(default=None, repr=False)

    def state_at(self, t: float) -> np.ndarray:
        if not 0.0 <= t <= self.duration * (1.0 + 1e-12):
            raise ValueError(f"time {t} outside the isochore window [0, {self.duration}]")
        if self._numeric_steps is None:
            return _relax_rep(self.initial, self.spec, t)
        if t == 0.0:
            return np.asarray(self.initial, dtype=complex).copy()
        steps = max(10, int(round(self._numeric_steps * t / self.duration)))
        return _integrate_rep(self.initial, self.spec, t, steps)

    @property
    def final(self) -> np.ndarray:
        return self.state_at(self.duration)

    @property
    def asymptote(self) -> np.ndarray:
        return steady_state_rep(self.spec)


def evolve_hot_analytic(rep0: np.ndarray, spec: BathSpec, tau: float) -> IsochoreSolution:
    """Closed-form hot isochore against the squeezed reservoir."""
    if spec.kind != HOT:
        raise ValueError(f"expected a {HOT} reservoir, got {spec.kind!r}")
    if tau < 0.0:
        raise ValueError(f"duration must be >= 0, got {tau}")
    return IsochoreSolution(initial=np.asarray(rep0, dtype=complex), spec=spec, duration=tau)


def evolve_cold_analytic(rep0: np.ndarray, spec: BathSpec, tau: float) -> IsochoreSolution:
    """Closed-form cold isochore against the thermal reservoir."""
    if spec.kind != COLD:
        raise ValueError(f"expected a {COLD} reservoir, got {spec.kind!r}")
    if tau < 0.0:
        raise ValueError(f"duration must be >= 0, got {tau}")
    return IsochoreSolution(initial=np.asarray(rep0, dtype=complex), spec=spec, duration=tau)


def _integrate_rep(rep0: np.ndarray, spec: BathSpec, t: float, steps: int) -> np.ndarray:
    """RK4 integration of the dissipator in the frame rotating with the qubit.

    The squeezed-reservoir master equation is time-independent in the
    interaction picture with jump operator
    S = cosh(r) sigma_- + e^{i theta} sinh(r) sigma_+, so the integration is
    done there and the free phases e^{-i omega t} are restored afterwards.
    """
    n_th = thermal_occupation(spec)
    s_down = np.cosh(spec.r) * SIGMA_MINUS_REP + np.exp(1j * spec.theta) * np.sinh(spec.r) * SIGMA_PLUS_REP
    s_up = s_down.conj().T
    channels = ((s_down, spec.gamma * (n_th + 1.0)), (s_up, spec.gamma * n_th))
    pre = []
    for op, rate in channels:
        pre.append((rate, op, op.conj().T @ op))

    def rhs(rho: np.ndarray) -> np.ndarray:
        out = np.zeros((2, 2), dtype=complex)
        for rate, op, opdop in pre:
            out += rate * (op @ rho @ op.conj().T - 0.5 * (opdop @ rho + rho @ opdop))
        return out

    rho = np.asarray(rep0, dtype=complex).copy()
    dt = t / steps
    for _ in range(steps):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * dt * k1)
        k3 = rhs(rho + 0.5 * dt * k2)
        k4 = rhs(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = hermitize(rho)
        rho = rho / rho.trace().real
    # restore the lab-frame phases exp(-i E_k t) with E = (-omega/2, +omega/2)
    phases = np.exp(-1j * np.array([-0.5, 0.5]) * spec.omega * t)
    return hermitize(phases[:, None] * rho * phases.conj()[None, :])


def evolve_numeric(
    rep0: np.ndarray, spec: BathSpec, tau: float, steps: int = 4000
) -> IsochoreSolution:
    """Numerically integrated isochore, for cross-checking the closed form.

    ``steps`` is the RK4 step count for the full duration; intermediate
    ``state_at`` queries scale it proportionally (minimum 10).
    """
    if tau < 0.0:
        raise ValueError(f"duration must be >= 0, got {tau}")
    if steps < 100:
        raise ValueError(f"step underflow: need at least 100 steps, got {steps}")
    return IsochoreSolution(
        initial=np.asarray(rep0, dtype=complex),
        spec=spec,
        duration=tau,
        _numeric_steps=steps,
    )

"""Four-stroke engine cycle: compression, hot isochore, expansion, cold isochore.

A cycle run produces the five corner states

    t0 --compression--> t1 --hot contact--> t2 --expansion--> t3 --cold contact--> t4

stored as energy-basis representations of the Hamiltonian that is active at
each corner (the cold Hamiltonian at t0/t3/t4, the hot one at t1/t2), always
in the deterministic eigenvector phase convention so the squeezing phase
theta has a fixed reference.  The limit cycle is the fixed point of the
t0 -> t4 map.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .bath import (
    COLD,
    HOT,
    BathSpec,
    evolve_cold_analytic,
    evolve_hot_analytic,
    steady_state_rep,
)
from .protocol import (
    COMPRESSION,
    EXPANSION,
    DriveProtocol,
    PropagatorResult,
    apply_mixed,
    coherence_coupling,
    propagate,
)
from .qubit import (
    coherence_of_rep,
    dephase_rep,
    gibbs_rep,
    kl_divergence,
    mean_excitation_rep,
    trace_distance,
)


class LimitCycleError(RuntimeError):
    """Raised when the cycle map fails to reach its fixed point."""


@dataclass(frozen=True)
class CycleConfig:
    """Full parameter set of one engine configuration (hbar = k_B = 1).

    Frequencies are rad/s, times seconds, temperatures as inverse energies
    1/(hbar rad/s).  ``dephased`` switches on the incoherent variant of the
    cycle in which energy-basis coherence is erased at the start of every
    stroke boundary adjacent to an isochore (cycle entry, after the hot
    contact, after the cold contact).
    """

    omega_c: float
    omega_h: float
    beta_c: float
    beta_h: float
    gamma_c: float
    gamma_h: float
    tau_dri: float
    tau_h: float
    tau_c: float
    r: float = 0.0
    theta: float = 0.0
    dephased: bool = False
    drive_steps: int = 2000
    limit_cycle_tol: float = 1e-12
    max_cycles: int = 10_000

    def __post_init__(self) -> None:
        if not 0.0 < self.omega_c < self.omega_h:
            raise ValueError(
                f"need 0 < omega_c < omega_h, got ({self.omega_c}, {self.omega_h})"
            )
        for name in ("beta_c", "beta_h", "gamma_c", "gamma_h", "tau_dri"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        for name in ("tau_h", "tau_c"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")
        if self.r < 0.0:
            raise ValueError(f"squeezing amplitude must be >= 0, got {self.r}")
        if self.limit_cycle_tol <= 0.0 or self.max_cycles < 1:
            raise ValueError("limit-cycle controls must be positive")

    def hot_bath(self) -> BathSpec:
        return BathSpec(
            omega=self.omega_h,
            beta=self.beta_h,
            gamma=self.gamma_h,
            r=self.r,
            theta=self.theta,
            kind=HOT,
        )

    def cold_bath(self) -> BathSpec:
        return BathSpec(
            omega=self.omega_c, beta=self.beta_c, gamma=self.gamma_c, kind=COLD
        )

    def compression(self) -> DriveProtocol:
        return DriveProtocol(
            omega_c=self.omega_c,
            omega_h=self.omega_h,
            tau_dri=self.tau_dri,
            direction=COMPRESSION,
            steps=self.drive_steps,
        )

    def expansion(self) -> DriveProtocol:
        return DriveProtocol(
            omega_c=self.omega_c,
            omega_h=self.omega_h,
            tau_dri=self.tau_dri,
            direction=EXPANSION,
            steps=self.drive_steps,
        )


def cycle_period(config: CycleConfig) -> float:
    """Total cycle duration tau_h + tau_c + 2 tau_dri in seconds."""
    return config.tau_h + config.tau_c + 2.0 * config.tau_dri


def stroke_propagators(config: CycleConfig) -> tuple[PropagatorResult, PropagatorResult]:
    """Compression and expansion propagators (the expensive, reusable part)."""
    return propagate(config.compression()), propagate(config.expansion())


@dataclass(frozen=True)
class CycleSnapshot:
    """Corner states and stroke data of one executed cycle.

    All ``rho_*`` fields are (ground, excited)-ordered representations in
    the energy basis active at that corner.  ``closure_residual`` is the
    trace distance between the cycle's end state and its start state;
    ``iterations`` counts fixed-point sweeps (0 for a single assumed-closure
    pass).
    """

    config: CycleConfig
    rho_t0: np.ndarray
    rho_t1: np.ndarray
    rho_t2: np.ndarray
    rho_t3: np.ndarray
    rho_t4: np.ndarray
    prop_ch: PropagatorResult
    prop_hc: PropagatorResult
    closure_residual: float
    iterations: int

    @property
    def final(self) -> np.ndarray:
        return self.rho_t4

    def coherence(self, corner: str) -> float:
        """Relative entropy of coherence C(rho) at a corner ('t0' ... 't4')."""
        return coherence_of_rep(self._corner(corner))

    def divergence(self, corner: str) -> float:
        """KL divergence from the corner state to its adjacent reservoir fixed point.

        Hot-basis corners (t1, t2) are compared against the squeezed
        reservoir's asymptote, cold-basis corners against the cold thermal
        state.
        """
        rep = self._corner(corner)
        if corner in ("t1", "t2"):
            ref = steady_state_rep(self.config.hot_bath())
        else:
            ref = gibbs_rep(self.config.omega_c, self.config.beta_c)
        return kl_divergence(rep, ref)

    def mean_excitation(self, corner: str) -> float:
        """(p_e - p_g)/2 at a corner, in the locally active energy basis."""
        return mean_excitation_rep(self._corner(corner))

    def zeta_ch(self) -> float:
        """Coherence-population coupling of the compression stroke."""
        return coherence_coupling(self.prop_ch, self.rho_t0)

    def zeta_hc(self) -> float:
        """Coherence-population coupling of the expansion stroke."""
        return coherence_coupling(self.prop_hc, self.rho_t2)

    def _corner(self, corner: str) -> np.ndarray:
        try:
            return {
                "t0": self.rho_t0,
                "t1": self.rho_t1,
                "t2": self.rho_t2,
                "t3": self.rho_t3,
                "t4": self.rho_t4,
            }[corner]
        except KeyError:
            raise ValueError(f"unknown corner {corner!r}; expected 't0'..'t4'") from None


def run_once(
    rep_start: np.ndarray,
    config: CycleConfig,
    propagators: tuple[PropagatorResult, PropagatorResult] | None = None,
) -> CycleSnapshot:
    """Execute one full cycle from a cold-basis starting representation.

    ``propagators`` may carry precomputed stroke unitaries (they depend only
    on the config, not on the state) to avoid recomputing them inside
    fixed-point iterations and sweeps.
    """
    prop_ch, prop_hc = propagators if propagators is not None else stroke_propagators(config)
    hot = config.hot_bath()
    cold = config.cold_bath()

    rho_t0 = np.asarray(rep_start, dtype=complex)
    if config.dephased:
        rho_t0 = dephase_rep(rho_t0)
    rho_t1 = apply_mixed(prop_ch, rho_t0)
    rho_t2 = evolve_hot_analytic(rho_t1, hot, config.tau_h).final
    if config.dephased:
        rho_t2 = dephase_rep(rho_t2)
    rho_t3 = apply_mixed(prop_hc, rho_t2)
    rho_t4 = evolve_cold_analytic(rho_t3, cold, config.tau_c).final
    if config.dephased:
        rho_t4 = dephase_rep(rho_t4)

    return CycleSnapshot(
        config=config,
        rho_t0=rho_t0,
        rho_t1=rho_t1,
        rho_t2=rho_t2,
        rho_t3=rho_t3,
        rho_t4=rho_t4,
        prop_ch=prop_ch,
        prop_hc=prop_hc,
        closure_residual=trace_distance(rho_t4, rho_t0),
        iterations=0,
    )


def find_limit_cycle(config: CycleConfig) -> CycleSnapshot:
    """Iterate the cycle map from the cold thermal seed to its fixed point.

    Convergence is declared when successive start states agree in trace
    distance within ``config.limit_cycle_tol``; exceeding
    ``config.max_cycles`` sweeps raises :class:`LimitCycleError`.
    """
    props = stroke_propagators(config)
    rep = gibbs_rep(config.omega_c, config.beta_c)
    for sweep in range(1, config.max_cycles + 1):
        snap = run_once(rep, config, propagators=props)
        if snap.closure_residual < config.limit_cycle_tol:
            return replace(snap, iterations=sweep)
        rep = snap.final
    raise LimitCycleError(
        f"no limit cycle within {config.max_cycles} sweeps "
        f"(last residual {snap.closure_residual:g}, tol {config.limit_cycle_tol:g})"
    )


def assumed_closure_cycle(config: CycleConfig) -> CycleSnapshot:
    """Single pass from the cold thermal seed, treating the cycle as closed.

    The returned snapshot's ``closure_residual`` quantifies how badly the
    closure assumption is violated; ``iterations`` is 0 to mark the mode.
    """
    seed = gibbs_rep(config.omega_c, config.beta_c)
    return run_once(seed, config)

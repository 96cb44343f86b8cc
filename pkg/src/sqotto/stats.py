"""Counting statistics of work and heat over one cycle.

The two driven strokes are described by two-point energy measurements and
the hot isochore by the reservoir's quantum-jump unraveling, which together
assign to every cycle realization a total work w (sum of both strokes) and
a hot heat q_h.  Because the corner states carry energy-basis coherence,
the resulting joint distribution is a *quasi*-probability: it is real and
normalized, its marginals reproduce all mean values and fluctuations, but
individual atoms may be slightly negative.  Dephasing the corner states
adjacent to the isochores removes the negativity and reduces the joint
distribution to the classical two-point-measurement statistics.

Energies are rad/s (hbar = 1); the stroke eigenvalues are -omega/2 and
+omega/2, so single quanta are omega_c / omega_h and coherence cross terms
live at half-quantum offsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bath import effective_inverse_temperature, squeezed_occupation, steady_state_rep
from .cycle import CycleConfig, CycleSnapshot, cycle_period
from .protocol import gauge_rep, gauged_mixed
from .qubit import dephase_rep, gibbs_rep, mean_excitation_rep

#: atoms with |weight| at or below this are dropped after merging
_PRUNE = 1e-14

#: relative tolerance (times omega_c) for merging numerically equal atom locations
_MERGE_SCALE = 1e-9


def _merge_sorted(values: np.ndarray, weights: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(values, kind="stable")
    values = values[order]
    weights = weights[order]
    out_v: list[float] = []
    out_w: list[float] = []
    for v, w in zip(values, weights):
        if out_v and v - out_v[-1] <= tol:
            # merge into the running atom, weight-averaging the location
            total = out_w[-1] + w
            if abs(total) > _PRUNE:
                out_v[-1] = (out_v[-1] * out_w[-1] + v * w) / total
            out_w[-1] = total
        else:
            out_v.append(float(v))
            out_w.append(float(w))
    return np.array(out_v), np.array(out_w)


@dataclass(frozen=True)
class AtomicDistribution:
    """A discrete (quasi-)distribution: atom locations and real weights.

    ``values`` is sorted ascending; weights sum to 1 within roundoff but
    individual entries may be negative for coherent cycles (see module
    docstring).  ``quasi`` reports whether any weight is meaningfully
    negative.
    """

    values: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_pairs(
        cls, pairs: dict[float, float] | list[tuple[float, float]], merge_tol: float
    ) -> "AtomicDistribution":
        items = pairs.items() if isinstance(pairs, dict) else pairs
        values = np.array([v for v, _ in items], dtype=float)
        weights = np.array([w for _, w in items], dtype=float)
        values, weights = _merge_sorted(values, weights, merge_tol)
        keep = np.abs(weights) > _PRUNE
        return cls(values=values[keep], weights=weights[keep])

    def total(self) -> float:
        return float(self.weights.sum())

    def mean(self) -> float:
        return float(self.weights @ self.values)

    def second_moment(self) -> float:
        return float(self.weights @ self.values**2)

    def variance(self) -> float:
        return self.second_moment() - self.mean() ** 2

    @property
    def min_weight(self) -> float:
        return float(self.weights.min()) if self.weights.size else 0.0

    @property
    def quasi(self) -> bool:
        """True when some atom is negative beyond roundoff (coherent cycle)."""
        return self.min_weight < -1e-12

    def weight_at(self, value: float, tol: float) -> float:
        """Total weight within ``tol`` of ``value`` (0.0 when no atom is there)."""
        mask = np.abs(self.values - value) <= tol
        return float(self.weights[mask].sum())


@dataclass(frozen=True)
class JointDistribution:
    """Joint atoms of (hot heat q, total work w) for one cycle.

    ``heat`` and ``work`` list the atom coordinates (rad/s), ``weights``
    the real quasi-probabilities.  Marginals merge atoms that coincide in
    one coordinate.
    """

    heat: np.ndarray
    work: np.ndarray
    weights: np.ndarray
    omega_c: float
    omega_h: float

    def total(self) -> float:
        return float(self.weights.sum())

    @property
    def quasi(self) -> bool:
        return bool(self.weights.size) and float(self.weights.min()) < -1e-12

    def work_marginal(self) -> AtomicDistribution:
        return AtomicDistribution.from_pairs(
            list(zip(self.work, self.weights)), merge_tol=_MERGE_SCALE * self.omega_c
        )

    def heat_marginal(self) -> AtomicDistribution:
        return AtomicDistribution.from_pairs(
            list(zip(self.heat, self.weights)), merge_tol=_MERGE_SCALE * self.omega_c
        )

    def mean_work(self) -> float:
        return float(self.weights @ self.work)

    def mean_heat(self) -> float:
        return float(self.weights @ self.heat)

    def work_second_moment(self) -> float:
        return float(self.weights @ self.work**2)

    def scgf(self, phi1: float, phi2: float) -> float:
        """Scaled cumulant generating function ln <exp(-phi1 q - phi2 w)>.

        Returns +inf when the tilted sum is non-positive, which can happen
        for strongly tilted quasi-distributions with negative atoms.
        """
        tilted = float(self.weights @ np.exp(-phi1 * self.heat - phi2 * self.work))
        if tilted <= 0.0:
            return math.inf
        return math.log(tilted)


def _stroke_data(snapshot: CycleSnapshot) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Gauged mixed matrices and gauged corner representations for both strokes."""
    m_ch = gauged_mixed(snapshot.prop_ch)
    m_hc = gauged_mixed(snapshot.prop_hc)
    rho0 = gauge_rep(snapshot.prop_ch, snapshot.rho_t0)
    rho2 = gauge_rep(snapshot.prop_hc, snapshot.rho_t2)
    return m_ch, m_hc, rho0, rho2


def _enumerate_joint(
    rho0: np.ndarray, rho2: np.ndarray, m_ch: np.ndarray, m_hc: np.ndarray
) -> dict[tuple[int, int, int], float]:
    """Accumulate joint atoms over all measurement-path pairs.

    Keys are integer offsets (k_q, k_wc, k_wh) encoding
    q = k_q * omega_h / 2 and w = (k_wc * omega_c + k_wh * omega_h) / 2,
    so atoms merge exactly irrespective of float noise in the energies.
    The hot-heat value is symmetrized over the bra/ket hot indices, which
    keeps the atoms real.
    """
    acc: dict[tuple[int, int, int], complex] = {}
    for n in range(2):
        for npr in range(2):
            rho0_el = rho0[n, npr]
            if rho0_el == 0.0:
                continue
            for m in range(2):
                amp_ch = m_ch[m, n] * rho0_el * np.conj(m_ch[m, npr])
                if amp_ch == 0.0:
                    continue
                for i in range(2):
                    for ipr in range(2):
                        rho2_el = rho2[i, ipr]
                        if rho2_el == 0.0:
                            continue
                        for j in range(2):
                            amp = amp_ch * (m_hc[j, i] * rho2_el * np.conj(m_hc[j, ipr]))
                            if amp == 0.0:
                                continue
                            key = (i + ipr - 2 * m, 2 * j - n - npr, 2 * m - i - ipr)
                            acc[key] = acc.get(key, 0.0) + amp
    out: dict[tuple[int, int, int], float] = {}
    for key, amp in acc.items():
        if abs(amp.imag) > 1e-10:
            raise RuntimeError(f"joint atom at {key} has imaginary weight {amp.imag:g}")
        if abs(amp.real) > _PRUNE:
            out[key] = float(amp.real)
    return out


def joint_distribution(
    snapshot: CycleSnapshot, max_closure_residual: float | None = None
) -> JointDistribution:
    """Joint (q_h, w_tot) statistics of one executed cycle.

    ``max_closure_residual`` optionally rejects snapshots that are not
    closed cycles; pass None (default) to accept single-pass snapshots
    whose statistics are then conditional on the recorded start state.
    """
    if max_closure_residual is not None and snapshot.closure_residual > max_closure_residual:
        raise ValueError(
            f"snapshot closure residual {snapshot.closure_residual:g} exceeds "
            f"{max_closure_residual:g}; run find_limit_cycle first"
        )
    cfg = snapshot.config
    m_ch, m_hc, rho0, rho2 = _stroke_data(snapshot)
    atoms = _enumerate_joint(rho0, rho2, m_ch, m_hc)
    keys = np.array(sorted(atoms), dtype=int).reshape(-1, 3)
    weights = np.array([atoms[tuple(k)] for k in keys], dtype=float)
    heat = 0.5 * keys[:, 0] * cfg.omega_h
    work = 0.5 * (keys[:, 1] * cfg.omega_c + keys[:, 2] * cfg.omega_h)
    total = weights.sum()
    if abs(total - 1.0) > 1e-10:
        raise RuntimeError(f"joint distribution mass is {total!r}, expected 1")
    return JointDistribution(
        heat=heat, work=work, weights=weights, omega_c=cfg.omega_c, omega_h=cfg.omega_h
    )


def tpm_distribution(snapshot: CycleSnapshot) -> JointDistribution:
    """Two-point-measurement statistics: the joint distribution with all
    corner coherence discarded.

    Coincides with :func:`joint_distribution` exactly when the snapshot was
    produced by a dephased cycle; for coherent cycles it is the classical
    (even, non-negative) part of the quasi-distribution.
    """
    cfg = snapshot.config
    m_ch, m_hc, rho0, rho2 = _stroke_data(snapshot)
    atoms = _enumerate_joint(dephase_rep(rho0), dephase_rep(rho2), m_ch, m_hc)
    keys = np.array(sorted(atoms), dtype=int).reshape(-1, 3)
    weights = np.array([atoms[tuple(k)] for k in keys], dtype=float)
    heat = 0.5 * keys[:, 0] * cfg.omega_h
    work = 0.5 * (keys[:, 1] * cfg.omega_c + keys[:, 2] * cfg.omega_h)
    return JointDistribution(
        heat=heat, work=work, weights=weights, omega_c=cfg.omega_c, omega_h=cfg.omega_h
    )


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _ingredients(snapshot: CycleSnapshot) -> tuple[float, float, float, float, float, float, float]:
    """(p0g, p0e, p2g, p2e, xi, zeta_ch, zeta_hc) of a snapshot."""
    p0g = float(snapshot.rho_t0[0, 0].real)
    p0e = float(snapshot.rho_t0[1, 1].real)
    p2g = float(snapshot.rho_t2[0, 0].real)
    p2e = float(snapshot.rho_t2[1, 1].real)
    return p0g, p0e, p2g, p2e, snapshot.prop_ch.xi, snapshot.zeta_ch(), snapshot.zeta_hc()


def work_distribution(snapshot: CycleSnapshot) -> AtomicDistribution:
    """Closed-form work marginal p(w) built from populations, xi and zetas.

    Population paths contribute at 0, +-omega_c, +-omega_h, +-(omega_c -
    omega_h) and +-(omega_c + omega_h); single-zeta terms sit a half
    quantum away; zeta*zeta interference sits at +-(omega_c +- omega_h)/2.
    """
    cfg = snapshot.config
    p0g, p0e, p2g, p2e, xi, z_ch, z_hc = _ingredients(snapshot)
    wc, wh = cfg.omega_c, cfg.omega_h
    diag = p0e * p2e + p0g * p2g
    terms = [
        (0.0, diag - 2.0 * diag * xi + xi**2),
        (-0.5 * wh, 2.0 * z_hc * (xi - p0g)),
        (-(wc + wh), p0e * p2e * xi**2),
        (wc, p0g * (1.0 - xi) * xi),
        (wc - 0.5 * wh, 2.0 * p0g * z_hc * (1.0 - xi)),
        (-wh, p2e * (1.0 - xi) * xi),
        (wc - wh, p0g * p2e * (1.0 - xi) ** 2),
        (-0.5 * wc, 2.0 * z_ch * (xi - p2g)),
        (-0.5 * (wc + wh), 4.0 * z_ch * z_hc),
        (0.5 * wc, 2.0 * z_ch * (p2e - xi)),
        (0.5 * (wc - wh), -4.0 * z_ch * z_hc),
        (-0.5 * wc - wh, -2.0 * p2e * z_ch * xi),
        (0.5 * wc - wh, 2.0 * p2e * z_ch * (xi - 1.0)),
        (wh, p2g * (1.0 - xi) * xi),
        (0.5 * wh, 2.0 * z_hc * (p0e - xi)),
        (wc + wh, p0g * p2g * xi**2),
        (wc + 0.5 * wh, 2.0 * p0g * z_hc * xi),
        (wh - 0.5 * wc, 2.0 * p2g * z_ch * (1.0 - xi)),
        (0.5 * (wh - wc), -4.0 * z_ch * z_hc),
        (0.5 * wc + wh, 2.0 * p2g * z_ch * xi),
        (0.5 * (wc + wh), 4.0 * z_ch * z_hc),
        (-wc, p0e * (1.0 - xi) * xi),
        (-wc - 0.5 * wh, -2.0 * p0e * z_hc * xi),
        (wh - wc, p0e * p2g * (1.0 - xi) ** 2),
        (0.5 * wh - wc, 2.0 * p0e * z_hc * (xi - 1.0)),
    ]
    return AtomicDistribution.from_pairs(terms, merge_tol=_MERGE_SCALE * wc)


def heat_distribution(snapshot: CycleSnapshot) -> AtomicDistribution:
    """Closed-form hot-heat marginal: atoms at -omega_h, 0, +omega_h only.

    The atom weights factorize through the post-compression populations,
    the coherence correction entering only via -2 zeta_ch.
    """
    cfg = snapshot.config
    p0g, p0e, p2g, p2e, xi, z_ch, _ = _ingredients(snapshot)
    p1g = p0g * (1.0 - xi) + p0e * xi - 2.0 * z_ch
    p1e = p0e * (1.0 - xi) + p0g * xi + 2.0 * z_ch
    terms = [
        (0.0, p1g * p2g + p1e * p2e),
        (cfg.omega_h, p1g * p2e),
        (-cfg.omega_h, p1e * p2g),
    ]
    return AtomicDistribution.from_pairs(terms, merge_tol=_MERGE_SCALE * cfg.omega_c)


def mean_work(snapshot: CycleSnapshot) -> float:
    """First moment <w_tot> of the work statistics (negative when extracting)."""
    cfg = snapshot.config
    n0 = mean_excitation_rep(snapshot.rho_t0)
    n2 = mean_excitation_rep(snapshot.rho_t2)
    xi = snapshot.prop_ch.xi
    z_ch, z_hc = snapshot.zeta_ch(), snapshot.zeta_hc()
    extracted = (
        (cfg.omega_h - cfg.omega_c) * (n2 - n0)
        + 2.0 * xi * (cfg.omega_c * n2 + cfg.omega_h * n0)
        - 2.0 * cfg.omega_h * z_ch
        - 2.0 * cfg.omega_c * z_hc
    )
    return -extracted


def mean_heat(snapshot: CycleSnapshot) -> float:
    """Mean heat <q_h> drawn from the hot reservoir during the isochore."""
    cfg = snapshot.config
    n0 = mean_excitation_rep(snapshot.rho_t0)
    n2 = mean_excitation_rep(snapshot.rho_t2)
    return cfg.omega_h * (n2 + n0 * (2.0 * snapshot.prop_ch.xi - 1.0) - 2.0 * snapshot.zeta_ch())


def heat_cold(snapshot: CycleSnapshot) -> float:
    """Mean heat <q_c> absorbed from the cold reservoir (negative: dumped)."""
    n3 = mean_excitation_rep(snapshot.rho_t3)
    n4 = mean_excitation_rep(snapshot.rho_t4)
    return snapshot.config.omega_c * (n4 - n3)


def first_law_residual(snapshot: CycleSnapshot) -> float:
    """|<w> + <q_h> + <q_c> - (E_t4 - E_t0)|; zero in exact arithmetic.

    On a closed cycle the corner energies cancel and the three currents
    alone sum to zero.
    """
    cfg = snapshot.config
    energy_0 = cfg.omega_c * mean_excitation_rep(snapshot.rho_t0)
    energy_4 = cfg.omega_c * mean_excitation_rep(snapshot.rho_t4)
    return abs(mean_work(snapshot) + mean_heat(snapshot) + heat_cold(snapshot) - (energy_4 - energy_0))


@dataclass(frozen=True)
class WorkDecomposition:
    """Extracted work split into incoherent and coherent contributions.

    ``dephased`` is the work a coherence-free cycle with the same corner
    populations would extract (it already contains ``friction``, the
    transition cost 2 xi (omega_c n_t2 + omega_h n_t0) of finite-time
    driving); ``coherent`` is the correction fed by corner coherence
    through the zetas.  extracted = dephased + coherent.
    """

    dephased: float
    friction: float
    coherent: float

    @property
    def extracted(self) -> float:
        return self.dephased + self.coherent


def work_decomposition(snapshot: CycleSnapshot) -> WorkDecomposition:
    cfg = snapshot.config
    n0 = mean_excitation_rep(snapshot.rho_t0)
    n2 = mean_excitation_rep(snapshot.rho_t2)
    xi = snapshot.prop_ch.xi
    friction = 2.0 * xi * (cfg.omega_c * n2 + cfg.omega_h * n0)
    dephased = (cfg.omega_h - cfg.omega_c) * (n2 - n0) + friction
    coherent = -2.0 * cfg.omega_h * snapshot.zeta_ch() - 2.0 * cfg.omega_c * snapshot.zeta_hc()
    return WorkDecomposition(dephased=dephased, friction=friction, coherent=coherent)


def work_second_moment(snapshot: CycleSnapshot) -> float:
    """<w^2> in closed form (populations, xi, zetas)."""
    cfg = snapshot.config
    n0 = mean_excitation_rep(snapshot.rho_t0)
    n2 = mean_excitation_rep(snapshot.rho_t2)
    xi = snapshot.prop_ch.xi
    z_ch, z_hc = snapshot.zeta_ch(), snapshot.zeta_hc()
    wc, wh = cfg.omega_c, cfg.omega_h
    return (
        wh**2 * (0.5 - 2.0 * n2 * (n0 + 2.0 * z_ch - 2.0 * n0 * xi))
        + wc**2 * (0.5 - 2.0 * n0 * (n2 + 2.0 * z_hc - 2.0 * n2 * xi))
        + wc
        * wh
        * (
            2.0 * xi
            - 1.0
            + 4.0 * z_ch * n2 * (1.0 - 2.0 * xi)
            + 4.0 * z_hc * n0 * (1.0 - 2.0 * xi)
            + 4.0 * n0 * n2 * (2.0 * xi**2 + 1.0 - 2.0 * xi)
            + 8.0 * z_ch * z_hc
        )
    )


def work_variance(snapshot: CycleSnapshot) -> float:
    """delta w^2 = <w^2> - <w>^2 in closed form.

    Written via the shifted populations A = (1 - 2 xi) n_t0 + 2 zeta_ch and
    B = (1 - 2 xi) n_t2 + 2 zeta_hc (the post-stroke mean excitations seen
    from the opposite end); algebraically identical to
    work_second_moment - mean_work^2.
    """
    cfg = snapshot.config
    n0 = mean_excitation_rep(snapshot.rho_t0)
    n2 = mean_excitation_rep(snapshot.rho_t2)
    xi = snapshot.prop_ch.xi
    a = (1.0 - 2.0 * xi) * n0 + 2.0 * snapshot.zeta_ch()
    b = (1.0 - 2.0 * xi) * n2 + 2.0 * snapshot.zeta_hc()
    wc, wh = cfg.omega_c, cfg.omega_h
    return (
        wh**2 * (0.5 - n2**2 - a**2)
        + wc**2 * (0.5 - n0**2 - b**2)
        + wc * wh * (2.0 * n0 * a + 2.0 * n2 * b + 2.0 * xi - 1.0)
    )


# ---------------------------------------------------------------------------
# performance metrics
# ---------------------------------------------------------------------------


def generalized_carnot(config: CycleConfig) -> float:
    """Efficiency bound 1 - beta_h_eff / beta_c of the squeezed-reservoir engine.

    Reduces to the ordinary Carnot value at r = 0 and exceeds it (approaching
    or passing 1) as squeezing heats the effective reservoir.
    """
    return 1.0 - effective_inverse_temperature(config.hot_bath()) / config.beta_c


def efficiency(snapshot: CycleSnapshot) -> float:
    """Thermal efficiency -<w>/<q_h>; NaN outside the engine regime (q_h <= 0)."""
    q_h = mean_heat(snapshot)
    if q_h <= 0.0:
        return math.nan
    return -mean_work(snapshot) / q_h


def entropy_production(snapshot: CycleSnapshot) -> float:
    """Total entropy production per cycle: -beta_h_eff <q_h> - beta_c <q_c>.

    Non-negative on the limit cycle; the squeezed reservoir enters at its
    effective inverse temperature.
    """
    beta_eff = effective_inverse_temperature(snapshot.config.hot_bath())
    return -beta_eff * mean_heat(snapshot) - snapshot.config.beta_c * heat_cold(snapshot)


def entropy_production_state_form(snapshot: CycleSnapshot) -> float:
    """Entropy production re-expressed through the isochore endpoint states.

    Tr((rho_t2 - rho_t1) ln rho_h_ss) + Tr((rho_t0 - rho_t3) ln rho_c_eq),
    valid on a closed cycle (rho_t4 = rho_t0); both reference states are
    diagonal in the local bases so only populations enter.
    """
    cfg = snapshot.config
    log_hot = np.log(np.diag(steady_state_rep(cfg.hot_bath())).real)
    log_cold = np.log(np.diag(gibbs_rep(cfg.omega_c, cfg.beta_c)).real)
    hot_term = float(
        (np.diag(snapshot.rho_t2).real - np.diag(snapshot.rho_t1).real) @ log_hot
    )
    cold_term = float(
        (np.diag(snapshot.rho_t0).real - np.diag(snapshot.rho_t3).real) @ log_cold
    )
    return hot_term + cold_term


def efficiency_identity_residual(snapshot: CycleSnapshot) -> float:
    """|eta - (eta_carnot_gen - Sigma / (beta_c <q_h>))|; zero on the limit cycle."""
    q_h = mean_heat(snapshot)
    if q_h <= 0.0:
        return math.nan
    eta = -mean_work(snapshot) / q_h
    bound = generalized_carnot(snapshot.config)
    return abs(eta - (bound - entropy_production(snapshot) / (snapshot.config.beta_c * q_h)))


def power_and_fluctuation(snapshot: CycleSnapshot) -> tuple[float, float]:
    """(output power, relative power fluctuation) of the cycle.

    Power is extracted work over the cycle period; the relative fluctuation
    sqrt(delta w^2)/(-<w>) is NaN (undefined) when no work is extracted.
    """
    extracted = -mean_work(snapshot)
    power = extracted / cycle_period(snapshot.config)
    if extracted <= 0.0:
        return power, math.nan
    return power, math.sqrt(max(work_variance(snapshot), 0.0)) / extracted


@dataclass(frozen=True)
class CycleReport:
    """Flat summary of one cycle's thermodynamics (all energies in rad/s)."""

    extracted_work: float
    heat_hot: float
    heat_cold: float
    work_dephased: float
    work_friction: float
    work_coherent: float
    work_variance: float
    eta: float
    eta_carnot_gen: float
    power: float
    rel_power_fluctuation: float
    entropy_production: float
    first_law_residual: float
    efficiency_identity_residual: float
    xi: float
    zeta_ch: float
    zeta_hc: float
    coherence_t2: float
    coherence_t3: float
    divergence_t2: float
    beta_h_eff: float
    period: float
    closure_residual: float
    iterations: int
    engine_regime: bool


def cycle_report(snapshot: CycleSnapshot) -> CycleReport:
    """Evaluate every scalar metric of a snapshot in one pass."""
    decomposition = work_decomposition(snapshot)
    q_h = mean_heat(snapshot)
    extracted = -mean_work(snapshot)
    power, rel_fluct = power_and_fluctuation(snapshot)
    return CycleReport(
        extracted_work=extracted,
        heat_hot=q_h,
        heat_cold=heat_cold(snapshot),
        work_dephased=decomposition.dephased,
        work_friction=decomposition.friction,
        work_coherent=decomposition.coherent,
        work_variance=work_variance(snapshot),
        eta=efficiency(snapshot),
        eta_carnot_gen=generalized_carnot(snapshot.config),
        power=power,
        rel_power_fluctuation=rel_fluct,
        entropy_production=entropy_production(snapshot),
        first_law_residual=first_law_residual(snapshot),
        efficiency_identity_residual=efficiency_identity_residual(snapshot),
        xi=snapshot.prop_ch.xi,
        zeta_ch=snapshot.zeta_ch(),
        zeta_hc=snapshot.zeta_hc(),
        coherence_t2=snapshot.coherence("t2"),
        coherence_t3=snapshot.coherence("t3"),
        divergence_t2=snapshot.divergence("t2"),
        beta_h_eff=effective_inverse_temperature(snapshot.config.hot_bath()),
        period=cycle_period(snapshot.config),
        closure_residual=snapshot.closure_residual,
        iterations=snapshot.iterations,
        engine_regime=bool(q_h > 0.0 and extracted > 0.0),
    )


def ideal_limit_report(config: CycleConfig) -> CycleReport:
    """Metrics of the quasi-static, fully thermalizing cycle.

    Evaluates the closed forms at xi = zeta = 0 with the corner populations
    pinned to the reservoir fixed points (cold thermal at t0, squeezed
    steady state at t2); the efficiency collapses to 1 - omega_c/omega_h.
    """
    n0 = -0.5 * math.tanh(0.5 * config.beta_c * config.omega_c)
    n_ss = squeezed_occupation(config.hot_bath())
    n2 = -0.5 / (2.0 * n_ss + 1.0)
    wc, wh = config.omega_c, config.omega_h
    extracted = (wh - wc) * (n2 - n0)
    q_h = wh * (n2 - n0)
    q_c = wc * (n0 - n2)
    beta_eff = effective_inverse_temperature(config.hot_bath())
    sigma = -beta_eff * q_h - config.beta_c * q_c
    variance = (
        wh**2 * (0.5 - n2**2 - n0**2)
        + wc**2 * (0.5 - n0**2 - n2**2)
        + wc * wh * (2.0 * n0 * n0 + 2.0 * n2 * n2 - 1.0)
    )
    period = cycle_period(config)
    eta = extracted / q_h if q_h > 0 else math.nan
    rel = math.sqrt(max(variance, 0.0)) / extracted if extracted > 0 else math.nan
    return CycleReport(
        extracted_work=extracted,
        heat_hot=q_h,
        heat_cold=q_c,
        work_dephased=extracted,
        work_friction=0.0,
        work_coherent=0.0,
        work_variance=variance,
        eta=eta,
        eta_carnot_gen=generalized_carnot(config),
        power=extracted / period,
        rel_power_fluctuation=rel,
        entropy_production=sigma,
        first_law_residual=0.0,
        efficiency_identity_residual=abs(
            eta - (generalized_carnot(config) - sigma / (config.beta_c * q_h))
        )
        if q_h > 0
        else math.nan,
        xi=0.0,
        zeta_ch=0.0,
        zeta_hc=0.0,
        coherence_t2=0.0,
        coherence_t3=0.0,
        divergence_t2=0.0,
        beta_h_eff=beta_eff,
        period=period,
        closure_residual=0.0,
        iterations=0,
        engine_regime=bool(q_h > 0 and extracted > 0),
    )


# ---------------------------------------------------------------------------
# large deviations of efficiency
# ---------------------------------------------------------------------------


def scgf(joint: JointDistribution, phi1: float, phi2: float) -> float:
    """ln <exp(-phi1 q_h - phi2 w_tot)> of the joint statistics."""
    return joint.scgf(phi1, phi2)


def _tilted_log(joint: JointDistribution, eta: float, x: np.ndarray) -> np.ndarray:
    """log sum of the eta-tilted weights at dimensionless tilts x (vectorized).

    x is phi2 * omega_c; entries where the tilted sum is non-positive map
    to +inf.
    """
    u = (eta * joint.heat + joint.work) / joint.omega_c
    tilted = np.exp(-np.outer(x, u)) @ joint.weights
    out = np.full(x.shape, np.inf)
    good = tilted > 0.0
    out[good] = np.log(tilted[good])
    return out


def efficiency_ldf(joint: JointDistribution, eta_values: np.ndarray) -> np.ndarray:
    """Large-deviation rate function J(eta) = -min_phi2 scgf(phi2*eta, phi2).

    The inner minimization runs over the single tilt variable along the ray
    phi1 = eta * phi2; it is performed on the dimensionless variable
    x = phi2 * omega_c with a widening coarse scan followed by golden-section
    refinement to |dx| < 1e-10.  J vanishes at the mean efficiency and is
    maximal at the generalized Carnot value for fluctuation-theorem-
    symmetric statistics.
    """
    eta_values = np.asarray(eta_values, dtype=float)
    out = np.empty(eta_values.shape, dtype=float)
    for idx, eta in enumerate(eta_values.ravel()):
        out.ravel()[idx] = -_minimize_tilt(joint, float(eta))
    return out


def _minimize_tilt(joint: JointDistribution, eta: float) -> float:
    span = 80.0
    while True:
        grid = np.linspace(-span, span, 321)
        vals = _tilted_log(joint, eta, grid)
        k = int(np.argmin(vals))
        if 0 < k < grid.size - 1 or span >= 1e5:
            break
        span *= 4.0
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc = _tilted_log(joint, eta, np.array([c]))[0]
    fd = _tilted_log(joint, eta, np.array([d]))[0]
    while b - a > 1e-10:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = _tilted_log(joint, eta, np.array([c]))[0]
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = _tilted_log(joint, eta, np.array([d]))[0]
    mid = 0.5 * (a + b)
    return float(_tilted_log(joint, eta, np.array([mid]))[0])


# ---------------------------------------------------------------------------
# trajectory sampling oracle
# ---------------------------------------------------------------------------


def sample_work_values(
    snapshot: CycleSnapshot, n_samples: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Monte-Carlo two-point-measurement work samples of one cycle.

    Draws energy outcomes sequentially (start populations, compression
    transition, post-isochore populations, expansion transition) and
    returns (work values, counts) over the realized atoms.  The sampled
    law is exactly :func:`tpm_distribution`'s work marginal.
    """
    cfg = snapshot.config
    m_ch, m_hc, rho0, rho2 = _stroke_data(snapshot)
    p0e = float(rho0[1, 1].real)
    p2e = float(rho2[1, 1].real)
    flip_ch = np.abs(m_ch[[1, 0], [0, 1]]) ** 2  # P(flip | n=0), P(flip | n=1)
    flip_hc = np.abs(m_hc[[1, 0], [0, 1]]) ** 2
    n = (rng.random(n_samples) < p0e).astype(np.int64)
    m = n ^ (rng.random(n_samples) < flip_ch[n]).astype(np.int64)
    i = (rng.random(n_samples) < p2e).astype(np.int64)
    j = i ^ (rng.random(n_samples) < flip_hc[i]).astype(np.int64)
    # w = (eps_h[m] - eps_c[n]) + (eps_c[j] - eps_h[i]) with eps = +-omega/2
    code = 3 * (j - n + 1) + (m - i + 1)
    counts = np.bincount(code, minlength=9)
    codes = np.arange(9)
    works = cfg.omega_c * ((codes // 3) - 1) + cfg.omega_h * ((codes % 3) - 1)
    keep = counts > 0
    return works[keep], counts[keep]


@dataclass(frozen=True)
class OracleRow:
    """One atom's exact-vs-sampled comparison."""

    work: float
    exact: float
    sampled: float
    z_score: float


def sampling_oracle(
    snapshot: CycleSnapshot, n_samples: int, seed: int
) -> list[OracleRow]:
    """Compare Monte-Carlo work statistics against the exact TPM marginal.

    Returns one row per atom of the union of exact and sampled support,
    with z = (f_hat - p) / sqrt(p (1 - p) / N).
    """
    rng = np.random.default_rng(seed)
    exact = tpm_distribution(snapshot).work_marginal()
    values, counts = sample_work_values(snapshot, n_samples, rng)
    tol = 1e-6 * snapshot.config.omega_c
    support = list(exact.values)
    for v in values:
        if not any(abs(v - s) <= tol for s in support):
            support.append(float(v))
    rows = []
    for v in sorted(support):
        p = exact.weight_at(v, tol)
        mask = np.abs(values - v) <= tol
        f_hat = float(counts[mask].sum()) / n_samples
        se = math.sqrt(max(p * (1.0 - p), 1e-300) / n_samples)
        rows.append(OracleRow(work=float(v), exact=p, sampled=f_hat, z_score=(f_hat - p) / se))
    return rows

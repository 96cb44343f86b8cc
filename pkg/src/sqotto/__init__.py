"""Finite-time qubit Otto engine with a squeezed hot reservoir.

Library layout:

* :mod:`sqotto.qubit` -- two-level states, entropies, coherence measures;
* :mod:`sqotto.protocol` -- driven strokes and their propagators;
* :mod:`sqotto.bath` -- thermal / squeezed-thermal isochore relaxation;
* :mod:`sqotto.cycle` -- the four-stroke cycle and its limit cycle;
* :mod:`sqotto.stats` -- work/heat counting statistics, performance metrics,
  efficiency large deviations, trajectory sampling;
* :mod:`sqotto.cli` -- the ``sqotto`` command-line interface.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .bath import (
    BathSpec,
    IsochoreSolution,
    effective_inverse_temperature,
    evolve_cold_analytic,
    evolve_hot_analytic,
    evolve_numeric,
    relaxation_time,
    squeezed_occupation,
    steady_state_rep,
    thermal_occupation,
)
from .cycle import (
    CycleConfig,
    CycleSnapshot,
    LimitCycleError,
    assumed_closure_cycle,
    cycle_period,
    find_limit_cycle,
    run_once,
    stroke_propagators,
)
from .protocol import (
    DriveProtocol,
    PropagatorResult,
    apply_unitary,
    coherence_coupling,
    drive_hamiltonian,
    propagate,
    transition_probability,
)
from .qubit import (
    EnergyBasis,
    dephase,
    eigenbasis,
    gibbs_state,
    kl_divergence,
    mean_excitation,
    relative_entropy_of_coherence,
    trace_distance,
    von_neumann_entropy,
)
from .stats import (
    AtomicDistribution,
    CycleReport,
    JointDistribution,
    WorkDecomposition,
    cycle_report,
    efficiency,
    efficiency_ldf,
    entropy_production,
    generalized_carnot,
    heat_cold,
    heat_distribution,
    ideal_limit_report,
    joint_distribution,
    mean_heat,
    mean_work,
    power_and_fluctuation,
    sample_work_values,
    sampling_oracle,
    scgf,
    tpm_distribution,
    work_decomposition,
    work_distribution,
    work_second_moment,
    work_variance,
)

__all__ = [
    "__version__",
    "AtomicDistribution",
    "BathSpec",
    "CycleConfig",
    "CycleReport",
    "CycleSnapshot",
    "DriveProtocol",
    "EnergyBasis",
    "IsochoreSolution",
    "JointDistribution",
    "LimitCycleError",
    "PropagatorResult",
    "WorkDecomposition",
    "apply_unitary",
    "assumed_closure_cycle",
    "coherence_coupling",
    "cycle_period",
    "cycle_report",
    "dephase",
    "drive_hamiltonian",
    "effective_inverse_temperature",
    "efficiency",
    "efficiency_ldf",
    "eigenbasis",
    "entropy_production",
    "evolve_cold_analytic",
    "evolve_hot_analytic",
    "evolve_numeric",
    "find_limit_cycle",
    "generalized_carnot",
    "gibbs_state",
    "heat_cold",
    "heat_distribution",
    "ideal_limit_report",
    "joint_distribution",
    "kl_divergence",
    "mean_excitation",
    "mean_heat",
    "mean_work",
    "power_and_fluctuation",
    "propagate",
    "relative_entropy_of_coherence",
    "relaxation_time",
    "run_once",
    "sample_work_values",
    "sampling_oracle",
    "scgf",
    "squeezed_occupation",
    "steady_state_rep",
    "stroke_propagators",
    "thermal_occupation",
    "tpm_distribution",
    "trace_distance",
    "transition_probability",
    "von_neumann_entropy",
    "work_decomposition",
    "work_distribution",
    "work_second_moment",
    "work_variance",
]

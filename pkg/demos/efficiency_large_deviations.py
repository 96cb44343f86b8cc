"""Large-deviation statistics of the stochastic efficiency.

The efficiency measured over a single cycle is a ratio of two fluctuating
quantities, so its long-run statistics are governed by a rate function
J(eta): the probability of observing a time-averaged efficiency eta over n
cycles decays like exp(-n J(eta)).  Two universal features are checked on
the long-contact preset (tau_dri = 460 us, tau_h = 2.8 s):

  * J vanishes only at the thermodynamic efficiency eta_th, the ratio of
    mean extracted work to mean hot heat;
  * J is maximal at the generalized Carnot bound, making the reversible
    efficiency the *least likely* fluctuation — and squeezing moves that
    peak toward (and past) unity.

Run:  python demos/efficiency_large_deviations.py
"""

from __future__ import annotations

import numpy as np

from sqotto import (
    cycle_report,
    efficiency_ldf,
    find_limit_cycle,
    joint_distribution,
)
from sqotto.cli import build_config, resolve_manifest

manifest = resolve_manifest("fig7", None, None)
etas = np.linspace(0.0, 1.2, 241)

print("=== rate function on the dephased long-contact cycle ===")
curves: dict[float, np.ndarray] = {}
reports = {}
for r in (0.0, 1.0):
    config = build_config({**manifest, "squeeze_r": r})
    snap = find_limit_cycle(config)
    report = cycle_report(snap)
    joint = joint_distribution(snap)
    curve = efficiency_ldf(joint, etas)
    curves[r] = curve
    reports[r] = report

    k_zero = int(np.argmin(curve))
    k_peak = int(np.argmax(curve))
    print(f"\n  r = {r:g}:")
    print(f"    eta_th               = {report.eta:.4f}")
    print(f"    zero of J            = {etas[k_zero]:.4f}"
          f"   (J there = {curve[k_zero]:.2e})")
    print(f"    generalized Carnot   = {report.eta_carnot_gen:.4f}")
    print(f"    argmax of J          = {etas[k_peak]:.4f}"
          f"   (J there = {curve[k_peak]:.4f})")

print("\n=== squeezing makes every off-mean efficiency rarer ===")
print(f"  {'eta':>5}  {'J(r=0)':>9}  {'J(r=1)':>9}")
for eta in (0.0, 0.2, 0.5, 0.7, 0.86, 1.0, 1.2):
    k = int(np.argmin(np.abs(etas - eta)))
    print(f"  {etas[k]:5.2f}  {curves[0.0][k]:9.5f}  {curves[1.0][k]:9.5f}")
mask = np.minimum(curves[0.0], curves[1.0]) > 0.05
print(f"\n  J(r=1) >= J(r=0) at {int(np.sum(curves[1.0][mask] >= curves[0.0][mask]))}"
      f" of {int(np.sum(mask))} points away from the zeros")

print("\n=== corner coherence shifts the peak of J ===")
for dephased in (True, False):
    config = build_config(
        {**manifest, "squeeze_r": 1.0, "dephased": dephased}
    )
    snap = find_limit_cycle(config)
    report = cycle_report(snap)
    curve = efficiency_ldf(joint_distribution(snap), etas)
    k_peak = int(np.argmax(curve))
    label = "dephased" if dephased else "coherent"
    print(f"  {label}: argmax J = {etas[k_peak]:.3f},"
          f" eta_carnot_gen = {report.eta_carnot_gen:.3f}")
print("  residual corner coherence biases the rare-fluctuation statistics;")
print("  erasing it restores the peak at the generalized Carnot point.")

"""Relaxation of a driven qubit in contact with a squeezed thermal reservoir.

Walks through the single-isochore physics underlying the engine cycle:

  1. occupations: thermal N_th versus squeezed N_ss and the effective
     inverse temperature that restores detailed balance;
  2. relaxation times 1/Gamma of the population sector for the two working
     points used everywhere else (about 245 ms hot, 762 ms cold);
  3. agreement of the closed-form relaxation kernel with a 4th-order
     integration of the dissipator (the two routes are independent);
  4. the two coherence quadratures: squeezing *protects* one of them, so
     the slowest time scale of the contact is exp(2r)-times longer than
     the population clock.

Run:  python demos/relaxation_dynamics.py
"""

from __future__ import annotations

import math

import numpy as np

from sqotto import (
    BathSpec,
    effective_inverse_temperature,
    evolve_hot_analytic,
    evolve_numeric,
    relaxation_time,
    squeezed_occupation,
    steady_state_rep,
    thermal_occupation,
    trace_distance,
)
from sqotto.bath import COLD, HOT, decay_rate

OMEGA_C = 4000.0 * math.pi  # rad/s  (2 kHz)
OMEGA_H = 7200.0 * math.pi  # rad/s  (3.6 kHz)
BETA_C = 2.0 / OMEGA_C  # beta_c * omega_c = 2
BETA_H = 0.5 / OMEGA_H  # beta_h * omega_h = 1/2
GAMMA = 1.0  # Hz

print("=== occupations and effective temperature ===")
cold = BathSpec(omega=OMEGA_C, beta=BETA_C, gamma=GAMMA, kind=COLD)
for r in (0.0, 0.5, 1.0, 2.0):
    hot = BathSpec(omega=OMEGA_H, beta=BETA_H, gamma=GAMMA, r=r, kind=HOT)
    n_th = thermal_occupation(hot)
    n_ss = squeezed_occupation(hot)
    beta_eff = effective_inverse_temperature(hot)
    print(
        f"  r = {r:3.1f}:  N_th = {n_th:7.4f}   N_ss = {n_ss:8.4f}   "
        f"beta_eff*omega_h = {beta_eff * OMEGA_H:7.4f}"
    )
print("  (squeezing raises the occupation, i.e. heats the channel)")

print("\n=== population relaxation times ===")
hot0 = BathSpec(omega=OMEGA_H, beta=BETA_H, gamma=GAMMA, kind=HOT)
print(f"  hot  (r=0): 1/Gamma = {relaxation_time(hot0) * 1e3:8.2f} ms")
print(f"  cold      : 1/Gamma = {relaxation_time(cold) * 1e3:8.2f} ms")

print("\n=== closed-form kernel vs 4th-order integration ===")
rng = np.random.default_rng(1)
v = rng.normal(size=3)
v *= 0.9 / np.linalg.norm(v)
rep0 = np.array(
    [[0.5 + v[2] / 2, (v[0] + 1j * v[1]) / 2], [(v[0] - 1j * v[1]) / 2, 0.5 - v[2] / 2]],
    dtype=complex,
)
for r in (0.0, 1.0, 2.0):
    spec = BathSpec(omega=OMEGA_H, beta=BETA_H, gamma=GAMMA, r=r, theta=0.7, kind=HOT)
    tau = 3.0 * relaxation_time(spec)
    analytic = evolve_hot_analytic(rep0, spec, tau)
    numeric = evolve_numeric(rep0, spec, tau, steps=4000)
    worst = max(
        trace_distance(analytic.state_at(t), numeric.state_at(t))
        for t in np.linspace(0.0, tau, 9)
    )
    print(f"  r = {r:3.1f}: worst trace distance over the contact = {worst:.2e}")

print("\n=== the squeezing-protected quadrature ===")
spec = BathSpec(omega=OMEGA_H, beta=BETA_H, gamma=GAMMA, r=1.0, theta=0.0, kind=HOT)
gamma_a = GAMMA * math.sinh(2.0) * (2 * thermal_occupation(spec) + 1)
fast = 0.5 * (decay_rate(spec) + gamma_a)  # anti-squeezed quadrature rate
slow = 0.5 * (decay_rate(spec) - gamma_a)  # protected quadrature rate
print(f"  population rate Gamma      = {decay_rate(spec):8.3f} /s")
print(f"  fast coherence quadrature  = {fast:8.3f} /s")
print(f"  slow coherence quadrature  = {slow:8.3f} /s   (= Gamma_r0 * exp(-2r) / 2)")
sol = evolve_hot_analytic(rep0, spec, 10.0 * relaxation_time(spec))
ss = steady_state_rep(spec)
print("  after 10 population relaxation times:")
print(f"    population gap to steady state : {abs(sol.final[1, 1].real - ss[1, 1].real):.2e}")
print(f"    surviving coherence            : {abs(sol.final[1, 0]):.2e}")
print("  the coherence outlives the populations by exp(2r); this residue")
print("  is what displaces figure-level trends at large squeezing")

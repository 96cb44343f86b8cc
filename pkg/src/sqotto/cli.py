"""Command-line front end: single cycles, parameter sweeps, distributions, LDF.

The manifest is a flat JSON dictionary of laboratory-style parameters
(frequencies in pi-kHz, durations in convenient units); it is resolved into
a :class:`~sqotto.cycle.CycleConfig` in internal rad/s units.  Presets pin
the manifests used throughout the accompanying analysis; every preset can
be further tweaked with --set KEY=VALUE.

Exit codes: 0 success, 2 invalid manifest/arguments, 3 numerical failure
(non-convergent limit cycle or a failed selftest assertion).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .bath import relaxation_time, squeezed_occupation, thermal_occupation
from .cycle import (
    CycleConfig,
    CycleSnapshot,
    LimitCycleError,
    assumed_closure_cycle,
    find_limit_cycle,
)
from .stats import (
    CycleReport,
    cycle_report,
    efficiency_ldf,
    generalized_carnot,
    ideal_limit_report,
    joint_distribution,
    mean_heat,
    mean_work,
    sampling_oracle,
    work_distribution,
    work_variance,
)

HBAR_SI = 1.054571817e-34  # J s

DEFAULT_MANIFEST: dict[str, object] = {
    "omega_c_pi_khz": 4.0,
    "omega_h_pi_khz": 7.2,
    "beta_c_hbar_omega_c": 2.0,
    "beta_h_hbar_omega_h": 0.5,
    "gamma_c_hz": 1.0,
    "gamma_h_hz": 1.0,
    "tau_dri_us": 460.0,
    "tau_h_ms": 75.15,
    "tau_c_s": 5.0,
    "squeeze_r": 0.0,
    "squeeze_theta_rad": 0.0,
    "dephased": False,
    "drive_steps": 2000,
    "mode": "limit-cycle",
    "limit_cycle_tol": 1e-12,
    "max_cycles": 10000,
    "sweep_key": "tau_dri_us",
    "sweep_start": 20.0,
    "sweep_stop": 1000.0,
    "sweep_points": 99,
    "sweep_scale": "linear",
    "eta_min": 0.0,
    "eta_max": 1.2,
    "eta_points": 401,
}

_SWEEPABLE = {
    "omega_c_pi_khz",
    "omega_h_pi_khz",
    "beta_c_hbar_omega_c",
    "beta_h_hbar_omega_h",
    "gamma_c_hz",
    "gamma_h_hz",
    "tau_dri_us",
    "tau_h_ms",
    "tau_c_s",
    "squeeze_r",
    "squeeze_theta_rad",
}

SWEEP_COLUMNS = [
    "extracted_work_hbar_omega_c",
    "heat_hot_hbar_omega_c",
    "eta_th",
    "eta_carnot_gen",
    "power_hbar_omega_c_per_s",
    "rel_power_fluct",
    "work_variance_hbar_omega_c_sq",
    "entropy_production_nats",
    "coherence_t2_nats",
    "coherence_t3_nats",
    "divergence_t2_nats",
    "xi",
    "zeta_ch",
    "zeta_hc",
    "closure_residual",
]


def _variants_r(*values: float, dephased: bool = False) -> list[tuple[str, dict]]:
    out = []
    for v in values:
        label = f"r{v:g}" + ("_deph" if dephased else "")
        over: dict[str, object] = {"squeeze_r": float(v)}
        if dephased:
            over["dephased"] = True
        out.append((label, over))
    return out


_SWEEP_TAU_DRI = ("tau_dri_us", 20.0, 1000.0, 99, "linear")
_SWEEP_TAU_H = ("tau_h_ms", 10.0, 800.0, 80, "linear")
_SWEEP_R = ("squeeze_r", 0.0, 2.0, 201, "linear")

PRESETS: dict[str, dict] = {
    "base": {"kind": "cycle", "overrides": {}},
    "fig2a": {
        "kind": "sweep",
        "overrides": {"tau_h_ms": 75.15},
        "sweep": _SWEEP_TAU_DRI,
        "variants": _variants_r(0.0, 0.5, 1.0),
    },
    "fig2b": {
        "kind": "sweep",
        "overrides": {"tau_dri_us": 200.0, "tau_h_ms": 75.15},
        "sweep": _SWEEP_R,
        "variants": [("all", {})],
    },
    "fig3a": {
        "kind": "sweep",
        "overrides": {"tau_h_ms": 75.15},
        "sweep": _SWEEP_TAU_DRI,
        "variants": _variants_r(0.0, 1.0, 2.0),
    },
    "fig3b": {
        "kind": "sweep",
        "overrides": {"tau_dri_us": 460.0, "tau_h_ms": 75.15},
        "sweep": _SWEEP_R,
        "variants": [("all", {})],
    },
    "fig3c": {
        "kind": "sweep",
        "overrides": {"tau_dri_us": 460.0},
        "sweep": _SWEEP_TAU_H,
        "variants": _variants_r(0.0, 1.0, 2.0) + _variants_r(0.0, 1.0, 2.0, dephased=True),
    },
    "fig4a": {
        "kind": "sweep",
        "overrides": {"tau_h_ms": 75.15},
        "sweep": _SWEEP_TAU_DRI,
        "variants": _variants_r(0.0, 0.5, 1.0),
    },
    "fig4b": {
        "kind": "sweep",
        "overrides": {"tau_dri_us": 200.0},
        "sweep": _SWEEP_TAU_H,
        "variants": _variants_r(0.0, 0.5, 1.0),
    },
    "fig6a": {
        "kind": "sweep",
        "overrides": {"tau_dri_us": 460.0},
        "sweep": _SWEEP_TAU_H,
        "variants": _variants_r(0.0, 1.0, 2.0),
    },
    "fig6b": {
        "kind": "sweep",
        "overrides": {"tau_h_ms": 75.15},
        "sweep": _SWEEP_TAU_DRI,
        "variants": _variants_r(0.0, 1.0, 2.0),
    },
    "fig7": {
        "kind": "ldf",
        "overrides": {
            "tau_dri_us": 460.0,
            "tau_h_ms": 2800.0,
            "dephased": True,
            "eta_min": 0.0,
            "eta_max": 1.2,
            "eta_points": 401,
        },
        "variants": _variants_r(0.0, 1.0),
    },
}
# efficiency views share the power-sweep parameter sets
PRESETS["fig5a"] = PRESETS["fig3a"]
PRESETS["fig5b"] = PRESETS["fig3b"]
PRESETS["fig5c"] = PRESETS["fig3c"]


@dataclass(frozen=True)
class RunManifest:
    """Resolved configuration of one CLI invocation."""

    manifest: dict
    preset: str | None = None
    variant: str | None = None
    version: str = field(default=__version__)

    def as_dict(self) -> dict:
        return {
            "version": self.version,
            "preset": self.preset,
            "variant": self.variant,
            "manifest": dict(self.manifest),
        }


class ManifestError(ValueError):
    """Invalid manifest contents (maps to exit code 2)."""


def resolve_manifest(
    preset: str | None,
    config_path: str | None,
    overrides: list[str] | None,
    mode: str | None = None,
) -> dict:
    """Merge defaults, preset, config file and --set pairs into one manifest."""
    manifest = dict(DEFAULT_MANIFEST)
    if preset is not None:
        spec = PRESETS.get(preset)
        if spec is None:
            raise ManifestError(
                f"unknown preset {preset!r}; available: {', '.join(sorted(PRESETS))}"
            )
        manifest.update(spec["overrides"])
        if "sweep" in spec:
            key, start, stop, points, scale = spec["sweep"]
            manifest.update(
                sweep_key=key, sweep_start=start, sweep_stop=stop,
                sweep_points=points, sweep_scale=scale,
            )
    if config_path is not None:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ManifestError(f"cannot read config file {config_path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ManifestError("config file must contain a JSON object")
        for key in loaded:
            if key not in DEFAULT_MANIFEST:
                raise ManifestError(f"unknown manifest key {key!r} in config file")
        manifest.update(loaded)
    for pair in overrides or []:
        if "=" not in pair:
            raise ManifestError(f"--set expects KEY=VALUE, got {pair!r}")
        key, _, raw = pair.partition("=")
        if key not in DEFAULT_MANIFEST:
            raise ManifestError(f"unknown manifest key {key!r}")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        manifest[key] = value
    if mode is not None:
        manifest["mode"] = mode
    if manifest["mode"] not in ("limit-cycle", "assumed-closure"):
        raise ManifestError(f"unknown mode {manifest['mode']!r}")
    return manifest


def build_config(manifest: dict) -> CycleConfig:
    """Convert a manifest into internal rad/s units."""
    try:
        omega_c = math.pi * 1e3 * float(manifest["omega_c_pi_khz"])
        omega_h = math.pi * 1e3 * float(manifest["omega_h_pi_khz"])
        config = CycleConfig(
            omega_c=omega_c,
            omega_h=omega_h,
            beta_c=float(manifest["beta_c_hbar_omega_c"]) / omega_c,
            beta_h=float(manifest["beta_h_hbar_omega_h"]) / omega_h,
            gamma_c=float(manifest["gamma_c_hz"]),
            gamma_h=float(manifest["gamma_h_hz"]),
            tau_dri=1e-6 * float(manifest["tau_dri_us"]),
            tau_h=1e-3 * float(manifest["tau_h_ms"]),
            tau_c=float(manifest["tau_c_s"]),
            r=float(manifest["squeeze_r"]),
            theta=float(manifest["squeeze_theta_rad"]),
            dephased=bool(manifest["dephased"]),
            drive_steps=int(manifest["drive_steps"]),
            limit_cycle_tol=float(manifest["limit_cycle_tol"]),
            max_cycles=int(manifest["max_cycles"]),
        )
    except (TypeError, ValueError, KeyError) as exc:
        raise ManifestError(f"invalid manifest: {exc}") from exc
    return config


def run_mode(manifest: dict) -> CycleSnapshot:
    config = build_config(manifest)
    if manifest["mode"] == "assumed-closure":
        return assumed_closure_cycle(config)
    return find_limit_cycle(config)


def _report_json(manifest: dict, run: RunManifest) -> dict:
    config = build_config(manifest)
    snapshot = run_mode(manifest)
    report = cycle_report(snapshot)
    wc = config.omega_c
    hot, cold = config.hot_bath(), config.cold_bath()
    return {
        "run": run.as_dict(),
        "derived": {
            "omega_c_rad_s": config.omega_c,
            "omega_h_rad_s": config.omega_h,
            "n_th_hot": thermal_occupation(hot),
            "n_ss_hot": squeezed_occupation(hot),
            "n_th_cold": thermal_occupation(cold),
            "beta_h_eff_hbar_omega_h": report.beta_h_eff * config.omega_h,
            "relaxation_time_hot_s": relaxation_time(hot),
            "relaxation_time_cold_s": relaxation_time(cold),
            "period_s": report.period,
        },
        "cycle": {
            "iterations": report.iterations,
            "closure_residual": report.closure_residual,
            "engine_regime": report.engine_regime,
        },
        "report": {
            "extracted_work_hbar_omega_c": report.extracted_work / wc,
            "heat_hot_hbar_omega_c": report.heat_hot / wc,
            "heat_cold_hbar_omega_c": report.heat_cold / wc,
            "work_dephased_hbar_omega_c": report.work_dephased / wc,
            "work_friction_hbar_omega_c": report.work_friction / wc,
            "work_coherent_hbar_omega_c": report.work_coherent / wc,
            "work_variance_hbar_omega_c_sq": report.work_variance / wc**2,
            "eta_th": report.eta,
            "eta_carnot_gen": report.eta_carnot_gen,
            "power_hbar_omega_c_per_s": report.power / wc,
            "rel_power_fluct": report.rel_power_fluctuation,
            "entropy_production_nats": report.entropy_production,
            "first_law_residual_hbar_omega_c": report.first_law_residual / wc,
            "efficiency_identity_residual": report.efficiency_identity_residual,
            "xi": report.xi,
            "zeta_ch": report.zeta_ch,
            "zeta_hc": report.zeta_hc,
            "coherence_t2_nats": report.coherence_t2,
            "coherence_t3_nats": report.coherence_t3,
            "divergence_t2_nats": report.divergence_t2,
        },
        "si": {
            "extracted_work_J": report.extracted_work * HBAR_SI,
            "heat_hot_J": report.heat_hot * HBAR_SI,
            "heat_cold_J": report.heat_cold * HBAR_SI,
            "power_W": report.power * HBAR_SI,
        },
    }


def _row_from_report(report: CycleReport, omega_c: float) -> list[float]:
    return [
        report.extracted_work / omega_c,
        report.heat_hot / omega_c,
        report.eta,
        report.eta_carnot_gen,
        report.power / omega_c,
        report.rel_power_fluctuation,
        report.work_variance / omega_c**2,
        report.entropy_production,
        report.coherence_t2,
        report.coherence_t3,
        report.divergence_t2,
        report.xi,
        report.zeta_ch,
        report.zeta_hc,
        report.closure_residual,
    ]


def _sweep_point(payload: tuple[dict, str, float]) -> list[float]:
    manifest, key, value = payload
    local = dict(manifest)
    local[key] = value
    snapshot = run_mode(local)
    report = cycle_report(snapshot)
    return [value] + _row_from_report(report, snapshot.config.omega_c)


def _sweep_grid(manifest: dict) -> np.ndarray:
    key = manifest["sweep_key"]
    if key not in _SWEEPABLE:
        raise ManifestError(f"sweep_key {key!r} is not sweepable ({sorted(_SWEEPABLE)})")
    start, stop = float(manifest["sweep_start"]), float(manifest["sweep_stop"])
    points = int(manifest["sweep_points"])
    if points < 1:
        raise ManifestError("sweep_points must be >= 1")
    if manifest["sweep_scale"] == "log":
        if start <= 0 or stop <= 0:
            raise ManifestError("log sweep requires positive endpoints")
        return np.geomspace(start, stop, points)
    if manifest["sweep_scale"] != "linear":
        raise ManifestError(f"unknown sweep_scale {manifest['sweep_scale']!r}")
    return np.linspace(start, stop, points)


def _write_sweep_csv(path: str, key: str, rows: list[list[float]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([key] + SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([repr(float(x)) for x in row])


def _run_sweep_variant(manifest: dict, out_path: str, jobs: int) -> None:
    grid = _sweep_grid(manifest)
    key = str(manifest["sweep_key"])
    payloads = [(manifest, key, float(v)) for v in grid]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_point, payloads))
    else:
        rows = [_sweep_point(p) for p in payloads]
    _write_sweep_csv(out_path, key, rows)


def _variant_paths(out: str, labels: list[str]) -> dict[str, str]:
    stem, dot, ext = out.rpartition(".")
    if not dot:
        stem, ext = out, "csv"
    if len(labels) == 1 and labels[0] == "all":
        return {"all": f"{stem}.{ext}"}
    return {label: f"{stem}_{label}.{ext}" for label in labels}


def _preset_variants(preset: str | None) -> list[tuple[str, dict]]:
    if preset is None:
        return [("all", {})]
    return PRESETS[preset].get("variants", [("all", {})])


def cmd_cycle(args: argparse.Namespace) -> int:
    manifest = resolve_manifest(args.preset, args.config, args.set, args.mode)
    run = RunManifest(manifest=manifest, preset=args.preset)
    payload = _report_json(manifest, run)
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    manifest = resolve_manifest(args.preset, args.config, args.set, args.mode)
    if args.preset is not None and PRESETS[args.preset]["kind"] == "ldf":
        return _ldf_run(manifest, args)
    out = args.out or "sweep.csv"
    variants = _preset_variants(args.preset)
    paths = _variant_paths(out, [label for label, _ in variants])
    for label, over in variants:
        local = dict(manifest)
        local.update(over)
        _run_sweep_variant(local, paths[label], args.jobs)
        print(f"wrote {paths[label]}")
    stem = out.rpartition(".")[0] or out
    with open(f"{stem}.manifest.json", "w", encoding="utf-8") as fh:
        json.dump(RunManifest(manifest=manifest, preset=args.preset).as_dict(), fh, indent=2)
        fh.write("\n")
    return 0


def _ldf_run(manifest: dict, args: argparse.Namespace) -> int:
    out = args.out or "ldf.csv"
    eta = np.linspace(
        float(manifest["eta_min"]), float(manifest["eta_max"]), int(manifest["eta_points"])
    )
    variants = _preset_variants(args.preset)
    columns: dict[str, np.ndarray] = {}
    for label, over in variants:
        local = dict(manifest)
        local.update(over)
        snapshot = run_mode(local)
        joint = joint_distribution(snapshot)
        columns[label] = efficiency_ldf(joint, eta)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["eta"] + [f"J_{label}" for label in columns])
        for idx, e in enumerate(eta):
            writer.writerow(
                [repr(float(e))] + [repr(float(columns[label][idx])) for label in columns]
            )
    print(f"wrote {out}")
    return 0


def cmd_ldf(args: argparse.Namespace) -> int:
    manifest = resolve_manifest(args.preset, args.config, args.set, args.mode)
    return _ldf_run(manifest, args)


def cmd_dist(args: argparse.Namespace) -> int:
    manifest = resolve_manifest(args.preset, args.config, args.set, args.mode)
    snapshot = run_mode(manifest)
    wc = snapshot.config.omega_c
    joint = joint_distribution(snapshot)
    stem = args.out or "dist"
    with open(f"{stem}.joint.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["heat_hbar_omega_c", "work_hbar_omega_c", "weight"])
        for q, w, p in zip(joint.heat, joint.work, joint.weights):
            writer.writerow([repr(float(q) / wc), repr(float(w) / wc), repr(float(p))])
    for name, dist in (("work", joint.work_marginal()), ("heat", joint.heat_marginal())):
        with open(f"{stem}.{name}.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow([f"{name}_hbar_omega_c", "weight"])
            for v, p in zip(dist.values, dist.weights):
                writer.writerow([repr(float(v) / wc), repr(float(p))])
    written = [f"{stem}.joint.csv", f"{stem}.work.csv", f"{stem}.heat.csv"]
    if args.oracle:
        rows = sampling_oracle(snapshot, args.samples, args.seed)
        with open(f"{stem}.oracle.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["work_hbar_omega_c", "exact_tpm", "sampled", "z_score"])
            for row in rows:
                writer.writerow(
                    [
                        repr(float(row.work) / wc),
                        repr(float(row.exact)),
                        repr(float(row.sampled)),
                        repr(float(row.z_score)),
                    ]
                )
        written.append(f"{stem}.oracle.csv")
    quasi = " (quasi-distribution: negative atoms present)" if joint.quasi else ""
    print(f"wrote {', '.join(written)}{quasi}")
    return 0


def _selftest_lines() -> list[tuple[str, bool, str]]:
    """(name, passed, detail) rows of the quick self-consistency battery."""
    results: list[tuple[str, bool, str]] = []
    base = resolve_manifest("base", None, None)
    config = build_config(base)

    t_hot = relaxation_time(config.hot_bath())
    t_cold = relaxation_time(config.cold_bath())
    ok = abs(t_hot - 0.2449) < 5e-5 and abs(t_cold - 0.7616) < 5e-5
    results.append(("relaxation-times", ok, f"hot {t_hot:.6f} s, cold {t_cold:.6f} s"))

    ideal = ideal_limit_report(config)
    ok = abs(ideal.eta - (1.0 - config.omega_c / config.omega_h)) < 1e-12
    results.append(("ideal-limit-efficiency", ok, f"eta {ideal.eta:.6f}"))

    carnot_r1 = generalized_carnot(replace(config, r=1.0))
    ok = abs(carnot_r1 - 0.96378) < 5e-5
    results.append(("generalized-carnot", ok, f"eta_C(r=1) {carnot_r1:.6f}"))

    rng = np.random.default_rng(20230817)
    worst = 0.0
    for _ in range(10):
        cfg = replace(
            config,
            r=float(rng.uniform(0.0, 2.0)),
            tau_h=float(rng.uniform(0.01, 1.0)),
            tau_dri=float(rng.uniform(5e-5, 1e-3)),
            theta=float(rng.uniform(0.0, 2.0 * np.pi)),
        )
        snap = find_limit_cycle(cfg)
        joint = joint_distribution(snap)
        scale = cfg.omega_c
        pairs = [
            (mean_work(snap), joint.mean_work()),
            (mean_heat(snap), joint.mean_heat()),
            (work_variance(snap), joint.work_marginal().variance()),
        ]
        for a, b in pairs:
            denom = max(abs(a), abs(b), scale * 1e-6)
            worst = max(worst, abs(a - b) / denom)
        worst = max(worst, abs(joint.total() - 1.0))
    ok = worst < 1e-9
    results.append(("closed-form-vs-enumeration", ok, f"worst rel dev {worst:.3e}"))

    from .bath import BathSpec, evolve_hot_analytic, evolve_numeric
    from .qubit import trace_distance

    worst = 0.0
    for r in (0.0, 1.0, 2.0):
        spec = BathSpec(omega=config.omega_h, beta=config.beta_h, gamma=1.0, r=r, theta=0.3)
        rep0 = np.array([[0.55, 0.2 + 0.1j], [0.2 - 0.1j, 0.45]], dtype=complex)
        t_end = 2.0 * relaxation_time(spec)
        exact = evolve_hot_analytic(rep0, spec, t_end).final
        numer = evolve_numeric(rep0, spec, t_end, steps=2000).final
        worst = max(worst, trace_distance(exact, numer))
    ok = worst < 1e-6
    results.append(("isochore-analytic-vs-numeric", ok, f"worst trace distance {worst:.3e}"))

    deph = replace(config, r=1.0, dephased=True)
    snap = find_limit_cycle(deph)
    rep = cycle_report(snap)
    dist = work_distribution(snap)
    ok = (
        abs(rep.extracted_work - rep.work_dephased) <= 1e-10 * abs(rep.extracted_work)
        and dist.min_weight >= -1e-12
    )
    results.append(
        ("dephased-variant",
         ok,
         f"work split residual {abs(rep.extracted_work - rep.work_dephased):.3e}, "
         f"min atom {dist.min_weight:.3e}"),
    )

    rows = sampling_oracle(snap, 100_000, seed=7)
    worst_z = max(abs(r.z_score) for r in rows)
    ok = worst_z < 5.0
    results.append(("sampling-oracle", ok, f"worst |z| {worst_z:.2f} over {len(rows)} atoms"))

    return results


def cmd_selftest(args: argparse.Namespace) -> int:
    failures = 0
    for name, ok, detail in _selftest_lines():
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        if not ok:
            failures += 1
    if failures:
        print(f"{failures} selftest check(s) failed")
        return 3
    print("all selftest checks passed")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", help="named parameter preset")
    parser.add_argument("--config", help="JSON manifest file")
    parser.add_argument(
        "--set", action="append", metavar="KEY=VALUE", help="override one manifest key"
    )
    parser.add_argument(
        "--mode",
        choices=["limit-cycle", "assumed-closure"],
        help="cycle closure handling (default: manifest value)",
    )
    parser.add_argument("--out", help="output path (or stem for dist)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqotto",
        description="finite-time qubit engine with a squeezed hot reservoir",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_cycle = sub.add_parser("cycle", help="run one configuration and print a JSON report")
    _add_common(p_cycle)
    p_cycle.set_defaults(func=cmd_cycle)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter to CSV (one file per variant)")
    _add_common(p_sweep)
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p_sweep.set_defaults(func=cmd_sweep)

    p_dist = sub.add_parser("dist", help="write joint/work/heat distribution CSVs")
    _add_common(p_dist)
    p_dist.add_argument("--oracle", action="store_true", help="also Monte-Carlo check p(w)")
    p_dist.add_argument("--samples", type=int, default=1_000_000)
    p_dist.add_argument("--seed", type=int, default=0)
    p_dist.set_defaults(func=cmd_dist)

    p_ldf = sub.add_parser("ldf", help="efficiency large-deviation function to CSV")
    _add_common(p_ldf)
    p_ldf.set_defaults(func=cmd_ldf)

    p_self = sub.add_parser("selftest", help="quick internal consistency battery")
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LimitCycleError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    if code == 0 and args.command != "cycle":
        print(f"done in {time.perf_counter() - started:.2f} s")
    return code


if __name__ == "__main__":
    sys.exit(main())

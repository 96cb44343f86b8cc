from __future__ import annotations

import csv
import json
import math

import pytest

from sqotto.cli import (
    DEFAULT_MANIFEST,
    ManifestError,
    SWEEP_COLUMNS,
    build_config,
    main,
    resolve_manifest,
)


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_resolve_manifest_defaults():
    manifest = resolve_manifest(None, None, None)
    assert manifest == DEFAULT_MANIFEST
    assert manifest is not DEFAULT_MANIFEST  # caller owns a copy


def test_resolve_manifest_applies_preset_then_overrides():
    manifest = resolve_manifest("fig2b", None, ["sweep_points=11"])
    assert manifest["tau_dri_us"] == 200.0
    assert manifest["sweep_key"] == "squeeze_r"
    assert manifest["sweep_points"] == 11  # --set wins over the preset grid
    assert manifest["sweep_stop"] == 2.0


def test_resolve_manifest_parses_set_values_as_json():
    manifest = resolve_manifest(None, None, ["dephased=true", "tau_h_ms=120.5"])
    assert manifest["dephased"] is True
    assert manifest["tau_h_ms"] == 120.5


def test_resolve_manifest_rejects_unknown_keys_and_presets():
    with pytest.raises(ManifestError):
        resolve_manifest(None, None, ["bogus_key=1"])
    with pytest.raises(ManifestError):
        resolve_manifest("fig4c", None, None)
    with pytest.raises(ManifestError):
        resolve_manifest(None, None, None, mode="both-at-once")


def test_resolve_manifest_reads_config_file(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"squeeze_r": 1.5, "tau_c_s": 2.0}))
    manifest = resolve_manifest(None, str(cfg), None)
    assert manifest["squeeze_r"] == 1.5
    assert manifest["tau_c_s"] == 2.0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nonsense": 1}))
    with pytest.raises(ManifestError):
        resolve_manifest(None, str(bad), None)


def test_build_config_unit_conversions():
    config = build_config(resolve_manifest(None, None, None))
    assert config.omega_c == pytest.approx(4000.0 * math.pi, rel=1e-15)
    assert config.omega_h == pytest.approx(7200.0 * math.pi, rel=1e-15)
    assert config.beta_c * config.omega_c == pytest.approx(2.0, rel=1e-15)
    assert config.beta_h * config.omega_h == pytest.approx(0.5, rel=1e-15)
    assert config.tau_dri == pytest.approx(460e-6, rel=1e-15)
    assert config.tau_h == pytest.approx(75.15e-3, rel=1e-15)


def test_cycle_command_writes_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["cycle", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"run", "derived", "cycle", "report", "si"}
    assert payload["derived"]["n_th_hot"] == pytest.approx(1.5414940825367982)
    assert payload["cycle"]["iterations"] >= 1
    assert payload["report"]["eta_carnot_gen"] == pytest.approx(0.8611111111111112)
    # stdout variant
    assert main(["cycle", "--set", "mode=assumed-closure"]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert printed["cycle"]["iterations"] == 0


def test_sweep_command_writes_csv_and_manifest(tmp_path):
    out = tmp_path / "sw.csv"
    code = main(
        [
            "sweep",
            "--set", "sweep_points=3",
            "--set", "sweep_start=100",
            "--set", "sweep_stop=300",
            "--out", str(out),
        ]
    )
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["tau_dri_us"] + SWEEP_COLUMNS
    assert len(rows) == 3
    assert [float(r[0]) for r in rows] == [100.0, 200.0, 300.0]
    manifest = json.loads((tmp_path / "sw.manifest.json").read_text())
    assert manifest["manifest"]["sweep_points"] == 3


def test_preset_sweep_writes_one_file_per_variant(tmp_path):
    out = tmp_path / "f6.csv"
    code = main(
        ["sweep", "--preset", "fig6a", "--set", "sweep_points=2", "--out", str(out)]
    )
    assert code == 0
    for label in ("r0", "r1", "r2"):
        header, rows = read_csv(tmp_path / f"f6_{label}.csv")
        assert header[0] == "tau_h_ms"
        assert len(rows) == 2


def test_ldf_preset_dispatches_from_sweep(tmp_path):
    out = tmp_path / "ldf.csv"
    code = main(
        ["sweep", "--preset", "fig7", "--set", "eta_points=21", "--out", str(out)]
    )
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["eta", "J_r0", "J_r1"]
    assert len(rows) == 21
    j0 = [float(r[1]) for r in rows]
    assert min(j0) > -1e-12  # rate function is non-negative


def test_dist_command_writes_distribution_files(tmp_path):
    stem = tmp_path / "d"
    code = main(
        [
            "dist",
            "--set", "squeeze_r=1.0",
            "--out", str(stem),
            "--oracle", "--samples", "20000", "--seed", "5",
        ]
    )
    assert code == 0
    _, joint_rows = read_csv(f"{stem}.joint.csv")
    assert sum(float(r[2]) for r in joint_rows) == pytest.approx(1.0, abs=1e-10)
    header, work_rows = read_csv(f"{stem}.work.csv")
    assert header == ["work_hbar_omega_c", "weight"]
    _, oracle_rows = read_csv(f"{stem}.oracle.csv")
    assert all(abs(float(r[3])) < 5.0 for r in oracle_rows)


def test_exit_codes_for_bad_input_and_nonconvergence(capsys):
    assert main(["cycle", "--preset", "fig4c"]) == 2
    assert "unknown preset" in capsys.readouterr().err
    assert main(["cycle", "--set", "max_cycles=2", "--set", "limit_cycle_tol=1e-15"]) == 3


def test_selftest_command_passes(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "all selftest checks passed" in out
    assert "FAIL" not in out

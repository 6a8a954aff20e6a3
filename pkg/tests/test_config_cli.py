"""Configuration parsing, validation, runner plumbing, and the CLI."""

import dataclasses
import json
import math

import pytest

from tpcool.cli import main
from tpcool.config import (
    ConfigError,
    SweepSpec,
    apply_parameter,
    default_config,
    load_config,
    si_parameter_table,
    validate_config,
)
from tpcool.fokker_planck import fp_limit_populations
from tpcool.liouvillian import MEVariant
from tpcool.model import BathLabel
from tpcool.runner import run_single, run_sweep, write_csv

GOOD_CONFIG = """
[run]
me_variant = filtered
n_max = 20
observables = mean_n, g2_zero, p0, p1

[model]
omega_b = 0.05
g = 0.01

[bath.hot]
kappa = 0.02
temperature = 2.0
filter_center = 0.9
filter_width = 0.01

[bath.cold]
kappa = 0.02
temperature = 0.0
filter_center = 1.0
filter_width = 0.01

[bath.resonator]
kappa = 1e-7
nbar = 5.0
"""


class TestConfig:
    def test_default_is_valid(self):
        cfg = default_config()
        validate_config(cfg)
        assert cfg.nbar_b == pytest.approx(5.0)
        assert cfg.me_variant is MEVariant.FILTERED

    def test_load_round_trip(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text(GOOD_CONFIG)
        cfg = load_config(path)
        assert cfg.n_max == 20
        assert cfg.bath(BathLabel.HOT).temperature == 2.0
        assert cfg.bath(BathLabel.HOT).filter.center == pytest.approx(0.9)
        assert cfg.nbar_b == pytest.approx(5.0)

    def test_env_config_dir(self, tmp_path, monkeypatch):
        (tmp_path / "site.ini").write_text(GOOD_CONFIG)
        monkeypatch.setenv("TPCOOL_CONFIG_DIR", str(tmp_path))
        cfg = load_config("site.ini")
        assert cfg.n_max == 20

    def test_duplicate_bath_sections_rejected(self, tmp_path):
        text = GOOD_CONFIG + "\n[bath.unknown]\nkappa = 0.1\n"
        path = tmp_path / "bad.ini"
        path.write_text(text)
        with pytest.raises(ConfigError, match="unknown bath label"):
            load_config(path)

    def test_nbar_and_temperature_conflict(self, tmp_path):
        text = GOOD_CONFIG.replace("nbar = 5.0", "nbar = 5.0\ntemperature = 0.3")
        path = tmp_path / "bad.ini"
        path.write_text(text)
        with pytest.raises(ConfigError, match="nbar or temperature"):
            load_config(path)

    def test_unknown_observable(self):
        cfg = dataclasses.replace(default_config(), observables=("mean_n", "purity"))
        with pytest.raises(ConfigError, match="purity"):
            validate_config(cfg)

    def test_two_hot_baths_named_in_error(self):
        cfg = default_config()
        hot = cfg.bath(BathLabel.HOT)
        bad = dataclasses.replace(cfg, baths=(hot, hot, cfg.baths[2]))
        with pytest.raises(ConfigError, match="exactly one 'hot' bath, found 2"):
            validate_config(bad)

    def test_sweep_grid_parsing(self, tmp_path):
        text = GOOD_CONFIG + "\n[sweep]\nparameter = bath.hot.temperature\ngrid = logspace:0.05:2.0:7\n"
        path = tmp_path / "sweep.ini"
        path.write_text(text)
        cfg = load_config(path)
        assert len(cfg.sweep.values) == 7
        assert cfg.sweep.values[0] == pytest.approx(0.05)
        assert cfg.sweep.values[-1] == pytest.approx(2.0)

    def test_parameter_paths(self):
        cfg = default_config()
        assert apply_parameter(cfg, "model.g", 0.005).model.g == 0.005
        assert apply_parameter(cfg, "n_max", 40).n_max == 40
        hot_t = apply_parameter(cfg, "bath.hot.temperature", 1.0)
        assert hot_t.bath(BathLabel.HOT).temperature == 1.0
        via_nbar = apply_parameter(cfg, "bath.resonator.nbar", 10.0)
        assert via_nbar.nbar_b == pytest.approx(10.0)
        with pytest.raises(ConfigError, match="path"):
            apply_parameter(cfg, "bogus.path", 1.0)
        with pytest.raises(ConfigError, match="field"):
            apply_parameter(cfg, "model.mass", 1.0)

    def test_si_table(self):
        table = si_parameter_table(default_config())
        assert table["omega_b_Hz"] == pytest.approx(500e6)
        assert table["kappa_resonator_Hz"] == pytest.approx(1e3)

    def test_empty_sweep_grid_rejected(self):
        with pytest.raises(ConfigError, match="empty"):
            SweepSpec(parameter="model.g", values=())


class TestRunner:
    def test_single_row_contents(self):
        cfg = dataclasses.replace(default_config(), n_max=20)
        row, meta = run_single(cfg)
        assert row["T_H"] == 2.0
        assert 0.0 < row["mean_n"] < 1.0
        assert row["g2_zero"] < 1.0
        assert meta["config"]["run.n_max"] == 20
        assert meta["diagnostics"]["trace_residual"] < 1e-10

    def test_reduced_variant_near_limit_populations(self):
        cfg = dataclasses.replace(default_config(), me_variant=MEVariant.REDUCED, n_max=30)
        row, _ = run_single(cfg)
        p0, p1 = fp_limit_populations(5.0)
        assert abs(row["p0"] - p0) / p0 < 0.10
        assert abs(row["p1"] - p1) / p1 < 0.10

    def test_single_point_sweep_matches_single(self):
        cfg = dataclasses.replace(
            default_config(),
            n_max=20,
            sweep=SweepSpec(parameter="bath.hot.temperature", values=(2.0,)),
        )
        rows, _ = run_sweep(cfg)
        row, _ = run_single(dataclasses.replace(cfg, sweep=None))
        assert rows[0]["mean_n"] == pytest.approx(row["mean_n"], rel=1e-12)
        assert rows[0]["error"] == ""

    def test_failed_point_emits_error_row(self):
        cfg = dataclasses.replace(
            default_config(),
            n_max=20,
            sweep=SweepSpec(parameter="model.g", values=(0.01, 0.9)),  # eta >= 1 fails
        )
        rows, _ = run_sweep(cfg)
        assert rows[0]["error"] == ""
        assert "eta" in rows[1]["error"]
        assert math.isnan(rows[1]["mean_n"])

    def test_parallel_sweep_order_deterministic(self):
        cfg = dataclasses.replace(
            default_config(),
            n_max=16,
            sweep=SweepSpec(parameter="bath.hot.temperature", values=(0.5, 1.0, 2.0)),
        )
        serial, _ = run_sweep(cfg, jobs=1)
        parallel, _ = run_sweep(cfg, jobs=3)
        assert [r["bath.hot.temperature"] for r in parallel] == [0.5, 1.0, 2.0]
        for a, b in zip(serial, parallel):
            assert a["mean_n"] == b["mean_n"]

    def test_write_csv_format(self, tmp_path):
        rows = [{"x": 1.0, "y": 0.5}, {"x": 2.0, "y": float("nan")}]
        meta = {"config": {"model.g": 0.01}}
        path = write_csv(tmp_path / "out.csv", rows, meta)
        text = path.read_text()
        lines = text.splitlines()
        assert lines[0].startswith("#")
        assert "model.g" in text
        assert "x,y" in lines
        assert "1.00000000000e+00" in text
        assert "nan" in text
        sidecar = json.loads((tmp_path / "out.csv.meta.json").read_text())
        assert sidecar["config"]["model.g"] == 0.01


class TestCli:
    def test_validate_config_ok(self, tmp_path, capsys):
        path = tmp_path / "run.ini"
        path.write_text(GOOD_CONFIG)
        assert main(["validate-config", "--config", str(path)]) == 0
        assert "OK" in capsys.readouterr().out

    def test_validate_config_bad(self, tmp_path, capsys):
        path = tmp_path / "bad.ini"
        path.write_text(GOOD_CONFIG + "\n[sweep]\nparameter = nope.nope\ngrid = 1,2\n")
        assert main(["validate-config", "--config", str(path)]) == 2
        assert "error" in capsys.readouterr().err

    def test_single_writes_csv_and_sidecar(self, tmp_path):
        out = tmp_path / "row.csv"
        code = main(["single", "--out", str(out), "--n-max", "16"])
        assert code == 0
        assert out.exists()
        assert out.with_suffix(".csv.meta.json").exists()
        header = out.read_text().splitlines()
        assert any(line.startswith("T_H,") or "T_H" in line.split(",") for line in header if not line.startswith("#"))

    def test_figure_requires_known_id(self):
        with pytest.raises(SystemExit):
            main(["figure", "fig9"])

    def test_missing_config_is_reported(self, capsys):
        assert main(["single", "--config", "/nonexistent/x.ini"]) == 2
        assert "not found" in capsys.readouterr().err

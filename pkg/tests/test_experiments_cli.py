"""Experiment runner determinism, report formats, and the CLI surface."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from rbfbench.cli import main
from rbfbench.experiments import (
    ExperimentConfig,
    config_hash,
    report_to_csv,
    report_to_json,
    run_rate_experiment,
)

from helpers import proportionality_factor, tabulated_poly

SMALL = dict(family="sobolev", d=1, gamma=2, p_list=(2.0,), levels=4,
             h0=1 / 8, jitter=0.25, seed=7)


@pytest.fixture(scope="module")
def small_reports():
    return run_rate_experiment(ExperimentConfig(**SMALL))


def test_reports_deterministic(tmp_path, small_reports):
    again = run_rate_experiment(ExperimentConfig(**SMALL))
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    report_to_json(small_reports, p1)
    report_to_json(again, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_report_schema(small_reports):
    rep = small_reports["error_p2"]
    payload = rep.to_dict()
    assert set(payload) == {"kernel", "p", "levels", "fitted_rate",
                            "fit_residual", "theory_rate", "seed", "config_hash"}
    assert payload["kernel"] == {"family": "sobolev", "d": 1, "k_or_gamma": 2}
    hs = [lv["h"] for lv in payload["levels"]]
    assert hs == sorted(hs, reverse=True)
    for lv in payload["levels"]:
        assert set(lv) == {"h", "q", "rho", "n_points", "error", "witness"}
    assert payload["config_hash"] == config_hash(ExperimentConfig(**SMALL))


def test_fitted_rate_needs_four_levels():
    cfg = ExperimentConfig(**{**SMALL, "levels": 3})
    rep = run_rate_experiment(cfg)["error_p2"]
    assert rep.fitted_rate is None
    assert rep.passed == (rep.levels[-1]["error"] < rep.levels[0]["error"])


def test_csv_mirror(tmp_path, small_reports):
    path = tmp_path / "report.csv"
    report_to_csv(small_reports, path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["p", "h", "q", "rho", "n_points", "error", "witness",
                       "fitted_rate", "theory_rate", "config_hash"]
    assert len(rows) == 1 + 4


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(family="gauss", d=1, gamma=2)
    with pytest.raises(ValueError):
        ExperimentConfig(family="wendland", d=1)        # k missing
    with pytest.raises(ValueError):
        ExperimentConfig(family="sobolev", d=1)         # gamma missing
    with pytest.raises(ValueError):
        ExperimentConfig(family="sobolev", d=1, gamma=2, ratio=1.5)


def test_config_infinity_roundtrip():
    cfg = ExperimentConfig(family="wendland", d=1, k=1, p_list=(2.0, np.inf))
    back = ExperimentConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
    assert back.p_list == (2.0, np.inf)
    assert config_hash(back) == config_hash(cfg)


def test_cli_help_lists_subcommands(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for name in ("kernels", "spectral", "measure", "property2", "rates",
                 "ratio-diag"):
        assert name in out


def test_cli_kernels_table(tmp_path):
    out = tmp_path / "table.json"
    assert main(["kernels", "table", "--d", "3", "--k", "1",
                 "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["d"] == 3 and data["k"] == 1
    from fractions import Fraction
    built = tuple(Fraction(int(n), int(dn)) for n, dn in data["coeffs"])
    lam = proportionality_factor(built, tabulated_poly(3, 1))
    assert lam is not None and lam > 0


def test_cli_rejects_unknown_and_missing_flags():
    proc = subprocess.run(
        [sys.executable, "-m", "rbfbench.cli", "kernels", "table",
         "--d", "1", "--k", "0", "--bogus"],
        capture_output=True)
    assert proc.returncode == 2
    proc = subprocess.run(
        [sys.executable, "-m", "rbfbench.cli", "kernels", "table", "--d", "1"],
        capture_output=True)
    assert proc.returncode == 2          # physical parameter k must be explicit


def test_cli_measure_check(tmp_path):
    out = tmp_path / "measure.json"
    assert main(["measure", "check", "--k", "1", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["max_factorization_residual"] < 1e-4
    assert data["discrete_ft_min"] >= data["discrete_ft_bound"] * (1 - 1e-12)


def test_cli_property2(tmp_path):
    out = tmp_path / "p2.json"
    csv_path = tmp_path / "p2.csv"
    assert main(["property2", "--kernel", "wendland", "--d", "1", "--k", "1",
                 "--h", "0.0625", "--budget", "300", "--out", str(out),
                 "--csv", str(csv_path)]) == 0
    data = json.loads(out.read_text())
    assert data["kappa"] == 2.0 and data["l"] == 2
    assert np.isfinite(data["C_emp"])
    with open(csv_path) as fh:
        header = fh.readline().strip().split(",")
    assert header == ["x0", "t0", "dist_over_h", "abs_E", "bound", "ratio"]


def test_cli_ratio_diag(tmp_path):
    out = tmp_path / "diag.json"
    assert main(["ratio-diag", "--d", "3", "--k", "1", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["gamma"] == 6
    assert data["min"] > 0


def test_cli_rates_with_config_file(tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"family": "sobolev", "d": 1, "gamma": 2,
                                    "levels": 4, "jitter": 0.25}))
    out = tmp_path / "rates.json"
    code = main(["rates", "--config", str(cfg_file), "--seed", "7",
                 "--out", str(out), "--csv", str(tmp_path / "rates.csv")])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["fitted_rate"] >= 1.6
    assert data["seed"] == 7             # flag overrode the file default


def test_cli_rates_bad_config():
    assert main(["rates", "--kernel", "wendland", "--d", "1"]) == 2


def test_cli_byte_identical_across_processes(tmp_path):
    args = ["rates", "--kernel", "sobolev", "--gamma", "2", "--d", "1",
            "--p", "2", "--levels", "4", "--seed", "7"]
    outs = []
    for name in ("r1.json", "r2.json"):
        out = tmp_path / name
        proc = subprocess.run(
            [sys.executable, "-m", "rbfbench.cli", *args, "--out", str(out)],
            capture_output=True)
        assert proc.returncode == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

from pathlib import Path

import pandas as pd
import pytest

from mertens_audit.analysis import estimate
from mertens_audit.errors import ConfigError, ConvergenceFailure, PVSpecError
from mertens_audit.harness import cli
from mertens_audit.harness.cli import (
    EXIT_GATED_FAILURE,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    RunConfig,
    main,
    parse_args,
)
from mertens_audit.harness.reports import CHECK_COLUMNS, SWEEP_COLUMNS
from mertens_audit.sieve import load_table, save_table


def _quantities(text):
    return {name: value for name, value in (line.split(" ", 1) for line in text.splitlines())}


def test_parse_sweep_arguments():
    config = parse_args(["sweep", "--table", "m.tbl", "--n-lo", "10", "--n-hi", "100", "--out", "s.csv"])
    assert config.command == "sweep"
    assert config.table_path == Path("m.tbl")
    assert (config.n_lo, config.n_hi, config.theta) == (10, 100, 0.999)
    assert config.seed == 0


def test_parse_estimate_from_n_and_theta():
    config = parse_args(["estimate", "--n", "100", "--theta", "0.8"])
    assert (config.n, config.theta, config.x) == (100, 0.8, None)


@pytest.mark.parametrize(
    "argv",
    [
        ["sieve", "--limit", "0", "--out", "m.tbl"],
        ["sweep", "--n-lo", "1", "--n-hi", "5", "--out", "s.csv"],
        ["estimate", "--n", "100"],
        ["pv-check", "--tolerance", "1e-13"],
        ["pv-check", "--mu", "2.5"],
        ["pv-check", "--epsilon", "0"],
        ["pv-check", "--x", "-1"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_with_two(argv):
    with pytest.raises(SystemExit) as exc_info:
        parse_args(argv)
    assert exc_info.value.code == 2


def test_run_config_validates_theta():
    with pytest.raises(ConfigError):
        RunConfig(command="sweep", theta=1.0)


def test_sieve_then_sweep(tmp_path, capsys):
    table_path = tmp_path / "m.tbl"
    assert main(["sieve", "--limit", "1000", "--out", str(table_path)]) == EXIT_OK
    assert capsys.readouterr().out == "M(1000) = 2\n"
    assert load_table(table_path).limit == 1000

    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--table", str(table_path), "--n-lo", "10", "--n-hi", "100", "--theta", "0.999",
                 "--out", str(out)])
    assert code == EXIT_OK
    frame = pd.read_csv(out)
    assert len(frame) == 91
    assert list(frame["n"]) == list(range(10, 101))
    assert (tmp_path / "sweep.csv.summary.txt").read_text().startswith("sweep theta=0.999")


def test_sweep_from_in_process_table_is_deterministic(tmp_path):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    for out, workers in ((first, "1"), (second, "2")):
        argv = ["sweep", "--limit", "5000", "--block-size", "700", "--workers", workers,
                "--n-lo", "1", "--n-hi", "4999", "--out", str(out)]
        assert main(argv) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_dn_check_is_reproducible(tmp_path):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert main(["dn-check", "--seed", "3", "--out", str(first)]) == EXIT_OK
    assert main(["dn-check", "--seed", "3", "--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    frame = pd.read_csv(first, dtype=str, keep_default_na=False)
    exact = frame[frame["check_id"] == "dn_identity.exact"]
    assert len(exact) == 100
    assert set(exact["pass"]) == {"true"}


def test_report_all_without_table_is_an_io_failure(tmp_path):
    assert main(["report-all", "--out", str(tmp_path / "all.csv")]) == EXIT_IO
    assert not (tmp_path / "all.csv").exists()


def test_inverse_check_with_missing_table_file(tmp_path):
    assert main(["inverse-check", "--table", str(tmp_path / "absent.tbl")]) == EXIT_IO


def test_pv_check_single_point(tmp_path, capsys):
    out = tmp_path / "pv.csv"
    code = main(["pv-check", "--mu", "0.5", "--epsilon", "0.5", "--x", "10.5", "--out", str(out)])
    assert code == EXIT_OK
    assert capsys.readouterr().out.endswith("verdict: PASS\n")
    frame = pd.read_csv(out, dtype=str, keep_default_na=False)
    assert list(frame["check_id"]) == ["pv.closed_form", "pv.inverse_estimate"]


def test_estimate_prints_named_quantities(capsys):
    assert main(["estimate", "--x", "100.4"]) == EXIT_OK
    values = _quantities(capsys.readouterr().out)
    assert float(values["epsilon"]) == pytest.approx(0.2, abs=1e-12)
    assert float(values["estimate"]) == pytest.approx(estimate(100.4, 0.2), rel=1e-12)
    assert float(values["quadrature_estimate"]) == pytest.approx(float(values["estimate"]), rel=1e-6)
    assert "probabilistic_bound" in values


def test_estimate_reports_whether_bounds_hold(tmp_path, capsys):
    table_path = tmp_path / "m.tbl"
    assert main(["sieve", "--limit", "10000", "--out", str(table_path)]) == EXIT_OK
    capsys.readouterr()
    assert main(["estimate", "--x", "5000.4", "--table", str(table_path)]) == EXIT_OK
    values = _quantities(capsys.readouterr().out)
    assert "mertens_abs" in values
    for name in ("macleod", "el_marraki_log", "log_power_11_9"):
        assert values[f"bound.{name}.holds"] == "true"
    assert values["bound.walfisz.holds"] in {"true", "false"}


def test_estimate_without_table_has_no_holds_rows(capsys):
    assert main(["estimate", "--x", "5000.4"]) == EXIT_OK
    assert ".holds" not in capsys.readouterr().out


def test_failed_gated_check_exits_with_one(tmp_path, capsys, monkeypatch):
    def not_converging(*args, **kwargs):
        raise ConvergenceFailure("stalled", best_value=1.0, est_error=1.0)

    monkeypatch.setattr(cli, "pv_integral", not_converging)
    monkeypatch.setattr(cli, "inverse_hilbert_estimate", not_converging)
    out = tmp_path / "pv.csv"
    code = main(["pv-check", "--mu", "0.5", "--epsilon", "0.5", "--x", "10.5", "--out", str(out)])
    assert code == EXIT_GATED_FAILURE
    assert capsys.readouterr().out.endswith("verdict: FAIL\n")
    frame = pd.read_csv(out, dtype=str, keep_default_na=False)
    assert set(frame["pass"]) == {"false"}


def test_invalid_pv_instance_is_a_usage_error(monkeypatch):
    def rejecting(*args, **kwargs):
        raise PVSpecError("window must lie in (0, x/4]")

    monkeypatch.setattr(cli, "pv_integral", rejecting)
    config = RunConfig(command="pv-check", mu=0.5, epsilon=0.5, x=10.5)
    assert cli.run(config) == EXIT_USAGE


@pytest.mark.slow
def test_report_all_against_a_table(tmp_path, small_table):
    table_path = tmp_path / "m.tbl"
    save_table(small_table, table_path)
    outputs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert main(["report-all", "--table", str(table_path), "--out", str(out)]) == EXIT_OK
        outputs.append(out)
    first, second = outputs

    assert first.read_bytes() == second.read_bytes()
    assert (tmp_path / "a.sweep.csv").read_bytes() == (tmp_path / "b.sweep.csv").read_bytes()
    assert (tmp_path / "a.csv.summary.txt").read_text().endswith("\n")

    checks = pd.read_csv(first, dtype=str, keep_default_na=False)
    assert list(checks.columns) == CHECK_COLUMNS
    families = {check_id.split(".")[0] for check_id in checks["check_id"]}
    assert {"pv", "theorem1", "dn_identity", "prop1", "mobius_inverse", "forward_hilbert",
            "parametric_pair", "hilbert_pair"} <= families
    gated = checks[checks["bound"] != ""]
    assert set(gated["pass"]) == {"true"}
    assert set(checks[checks["bound"] == ""]["pass"]) <= {""}

    sweep = pd.read_csv(tmp_path / "a.sweep.csv", dtype={"satisfied": str})
    assert list(sweep.columns) == SWEEP_COLUMNS
    assert list(sweep["n"]) == list(range(10, small_table.limit))
    assert set(sweep["satisfied"]) <= {"true", "false"}

import pandas as pd
import pytest

from mertens_audit.analysis import CheckReport, gated_report, report_only, satisfied_fraction, sweep_report
from mertens_audit.errors import ContractViolation
from mertens_audit.harness.reports import (
    CHECK_COLUMNS,
    SWEEP_COLUMNS,
    format_quantity,
    param_json,
    summarize,
    summary_path,
    sweep_summary,
    write_checks_csv,
    write_sweep_csv,
)


def test_summarize_empty():
    assert summarize([]) == "0 checks\n"


def test_summarize_all_passing():
    reports = [
        gated_report("theorem1.inverse_t", {"A": 10}, 0.04, 0.1),
        gated_report("theorem1.inverse_t", {"A": 100}, 0.004, 0.01),
    ]
    text = summarize(reports)
    assert text.startswith("2 checks (2 gated, 0 report-only)")
    assert "theorem1: 2 checks, 2/2 passed (100.0%)" in text
    assert text.endswith("verdict: PASS\n")


def test_summarize_mixed():
    reports = [
        gated_report("pv.closed_form", {}, 1e-9, 1e-6),
        gated_report("pv.closed_form", {}, 1e-3, 1e-6),
        report_only("prop1.shifted_harmonic", {}, -2.0),
        report_only("prop1.shifted_harmonic", {}, 1.0),
        report_only("prop1.shifted_harmonic", {}, 3.0),
    ]
    text = summarize(reports)
    assert "pv: 2 checks, 1/2 passed (50.0%)" in text
    assert "prop1: 3 checks, |residual| min 1 median 2 max 3" in text
    assert text.index("Gated checks") < text.index("Report-only checks")
    assert text.endswith("verdict: FAIL\n")


def test_summarize_without_gated_checks():
    text = summarize([report_only("mobius_inverse.trace", {}, 0.5)])
    assert text.endswith("verdict: no gated checks\n")


def test_report_requires_bound_and_pass_together():
    with pytest.raises(ContractViolation):
        CheckReport("pv.closed_form", {}, 0.0, 1e-6, None)


def test_param_json_sorts_keys():
    assert param_json({"x": 1.5, "A": 10}) == '{"A": 10, "x": 1.5}'


def test_checks_csv_schema(tmp_path):
    path = tmp_path / "checks.csv"
    write_checks_csv(
        [
            gated_report("pv.closed_form", {"mu": 0.5}, 1e-9, 1e-6),
            report_only("mobius_inverse.partial", {"x": 100.4, "A": 1000}, 0.25, "note"),
        ],
        path,
    )
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CHECK_COLUMNS)
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    assert list(frame["pass"]) == ["true", ""]
    assert list(frame["bound"]) == ["9.9999999999999995e-07", ""]
    assert frame["param_json"][1] == '{"A": 1000, "x": 100.4}'
    assert float(frame["residual"][1]) == 0.25


def test_sweep_csv_header(tmp_path, small_table):
    path = tmp_path / "sweep.csv"
    records = sweep_report(10, 20, 0.999, small_table)
    write_sweep_csv(records, path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert len(lines) == 12
    frame = pd.read_csv(path, dtype={"satisfied": str}, keep_default_na=False)
    assert set(frame["satisfied"]) <= {"true", "false"}
    assert list(frame["n"]) == list(range(10, 21))


def test_summary_path_appends_suffix(tmp_path):
    assert summary_path(tmp_path / "out.csv").name == "out.csv.summary.txt"


def test_format_quantity_booleans():
    assert format_quantity(True) == "true"
    assert format_quantity(False) == "false"
    assert format_quantity(7) == "7"


def test_sweep_summary_counts(small_table):
    records = sweep_report(10, 500, 0.999, small_table)
    fraction = satisfied_fraction(records)
    satisfied = sum(r.satisfied for r in records)
    text = sweep_summary(records, 0.999)
    assert f"{satisfied}/{len(records)} points" in text
    assert f"({fraction:.6f})" in text
    assert sweep_summary([], 0.5) == "sweep theta=0.5: 0 points\n"

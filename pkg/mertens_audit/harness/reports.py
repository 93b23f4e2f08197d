#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Report output
CSV emission for check reports and sweeps, and the text verdict summary
"""

import dataclasses
import json
from pathlib import Path

import numpy as np
import pandas as pd

from ..analysis import satisfied_fraction
from ..config import get_logger

logger = get_logger("mertens_audit.reports")

CHECK_COLUMNS = ["check_id", "param_json", "residual", "bound", "pass"]
SWEEP_COLUMNS = ["n", "theta", "x", "epsilon", "mertens", "mertens_abs", "estimate", "satisfied"]
FLOAT_FORMAT = "%.17g"


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _float_text(value):
    return FLOAT_FORMAT % value


def _bool_text(value):
    return "true" if value else "false"


def param_json(inputs):
    """Inputs as JSON with sorted keys."""
    return json.dumps(inputs, sort_keys=True, default=_json_default)


def checks_frame(reports):
    """
    One row per CheckReport; bound and pass are empty for report-only rows.

    Args:
        reports: Sequence of CheckReport

    Returns:
        pandas DataFrame with CHECK_COLUMNS, every cell already rendered as text
    """
    rows = []
    for report in reports:
        rows.append({
            "check_id": report.check_id,
            "param_json": param_json(report.inputs),
            "residual": _float_text(report.residual),
            "bound": "" if report.bound is None else _float_text(report.bound),
            "pass": "" if report.passed is None else _bool_text(report.passed),
        })
    return pd.DataFrame(rows, columns=CHECK_COLUMNS)


def write_checks_csv(reports, path):
    path = Path(path)
    checks_frame(reports).to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(reports)} check rows to {path}")
    return path


def sweep_frame(records):
    frame = pd.DataFrame([dataclasses.asdict(r) for r in records], columns=SWEEP_COLUMNS)
    frame["satisfied"] = frame["satisfied"].map(_bool_text)
    return frame


def write_sweep_csv(records, path):
    path = Path(path)
    sweep_frame(records).to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"Wrote {len(records)} sweep rows to {path}")
    return path


def summarize(reports):
    """
    Text verdict: one line per check family, gated and report-only families
    in separate sections.

    Gated lines carry the pass rate; report-only lines carry min, median and
    max of |residual|.

    Args:
        reports: Sequence of CheckReport

    Returns:
        str ending in a newline
    """
    reports = list(reports)
    if not reports:
        return "0 checks\n"

    gated = [r for r in reports if r.gated]
    informative = [r for r in reports if not r.gated]
    lines = [f"{len(reports)} checks ({len(gated)} gated, {len(informative)} report-only)"]

    if gated:
        lines.append("")
        lines.append("Gated checks")
        for family, members in _by_family(gated):
            passed = sum(1 for r in members if r.passed)
            rate = 100.0 * passed / len(members)
            lines.append(f"  {family}: {len(members)} checks, {passed}/{len(members)} passed ({rate:.1f}%)")

    if informative:
        lines.append("")
        lines.append("Report-only checks")
        for family, members in _by_family(informative):
            magnitudes = np.abs(np.array([r.residual for r in members], dtype=np.float64))
            if np.all(np.isnan(magnitudes)):
                lines.append(f"  {family}: {len(members)} checks, |residual| not finite")
                continue
            low, mid, high = np.nanquantile(magnitudes, [0.0, 0.5, 1.0])
            lines.append(
                f"  {family}: {len(members)} checks, |residual| min {low:.6g} median {mid:.6g} max {high:.6g}"
            )

    lines.append("")
    if not gated:
        lines.append("verdict: no gated checks")
    elif all(r.passed for r in gated):
        lines.append("verdict: PASS")
    else:
        lines.append("verdict: FAIL")
    return "\n".join(lines) + "\n"


def sweep_summary(records, theta):
    """One line with the share of sweep points where |M(x)| falls below the estimate."""
    if not records:
        return f"sweep theta={theta!r}: 0 points\n"
    satisfied = sum(1 for r in records if r.satisfied)
    return (
        f"sweep theta={theta!r}: n in [{records[0].n}, {records[-1].n}], "
        f"{satisfied}/{len(records)} points with |M(x)| < estimate ({satisfied_fraction(records):.6f})\n"
    )


def _by_family(reports):
    families = {}
    for report in reports:
        families.setdefault(report.family, []).append(report)
    return list(families.items())


def summary_path(output_path):
    output_path = Path(output_path)
    return output_path.with_name(output_path.name + ".summary.txt")


def write_summary(text, output_path):
    path = summary_path(output_path)
    path.write_text(text)
    logger.info(f"Wrote summary to {path}")
    return path


def format_quantity(value):
    if isinstance(value, bool):
        return _bool_text(value)
    if isinstance(value, float):
        return _float_text(value)
    return str(value)


def write_quantities_csv(rows, path):
    """Named scalar results as a quantity,value CSV."""
    path = Path(path)
    frame = pd.DataFrame(
        [(name, format_quantity(value)) for name, value in rows], columns=["quantity", "value"]
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(rows)} quantities to {path}")
    return path

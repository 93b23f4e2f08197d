#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Command-line harness
Builds or loads Mertens tables, runs the audit suites and writes CSV reports
with a consolidated verdict summary
"""

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from ..analysis import (
    HILBERT_PAIR_CATALOG,
    PARAMETRIC_PAIR_CATALOG,
    CheckReport,
    classical_bounds,
    dn_identity_check,
    epsilon_for,
    estimate,
    gated_report,
    integral_epsilon,
    mobius_inverse_trace,
    monotone_catalog,
    parametric_pair_check,
    probabilistic_bound,
    prop1_residual,
    sweep_report,
    theorem1_report,
    theta_sweep_check,
    x_from_theta,
)
from ..config import (
    default_block_size,
    default_tolerance,
    default_workers,
    get_logger,
)
from ..errors import (
    ConfigError,
    ConvergenceFailure,
    MertensAuditError,
    PVSpecError,
    QuadratureError,
    TableFileError,
)
from ..quadrature import (
    PVSpec,
    forward_hilbert_trace,
    hilbert_pair_roundtrip,
    inverse_hilbert_estimate,
    pv_closed_form,
    pv_integral,
)
from ..sieve import load_table, mertens_at, mertens_scan, save_table
from .reports import (
    format_quantity,
    summarize,
    sweep_summary,
    write_checks_csv,
    write_quantities_csv,
    write_summary,
    write_sweep_csv,
)

logger = get_logger("mertens_audit.harness")

COMMANDS = (
    "sieve", "estimate", "sweep", "pv-check", "theorem1",
    "dn-check", "inverse-check", "pair-check", "report-all",
)

EXIT_OK = 0
EXIT_GATED_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3

MU_GRID = (0.25, 0.5, 0.75, 1.5)
EPSILON_GRID = (0.1, 0.5, 0.9)
X_GRID = (10.5, 100.4, 1000.7)
PV_RELATIVE_BOUND = 1e-6
THEOREM1_HORIZONS = (10, 100, 1000, 10000)
TRACE_HORIZONS = (1000, 10000, 100000)
DN_SAMPLES = 100
PROP1_X = 7.3
PROP1_A = 10 ** 6


@dataclass(frozen=True)
class RunConfig:
    """
    Resolved settings of one harness run.

    Attributes:
        command: One of COMMANDS
        table_path: Mertens table file to load (or to write, for sieve)
        limit: Sieve limit when a table is built in-process
        stride: Checkpoint interval
        block_size: Sieve segment length
        workers: Worker processes for block sums
        tolerance: Quadrature tolerance, >= 1e-12
        output_path: CSV destination
        seed: Seed of every randomized sample
    """

    command: str
    table_path: Optional[Path] = None
    limit: Optional[int] = None
    stride: Optional[int] = None
    block_size: int = 1 << 22
    workers: int = 1
    tolerance: float = 1e-8
    output_path: Optional[Path] = None
    seed: int = 0
    x: Optional[float] = None
    n: Optional[int] = None
    theta: Optional[float] = None
    n_lo: Optional[int] = None
    n_hi: Optional[int] = None
    alpha: Optional[float] = None
    mu: Optional[float] = None
    epsilon: Optional[float] = None
    k: int = 50

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not self.tolerance >= 1e-12:
            raise ConfigError(f"tolerance must be >= 1e-12, got {self.tolerance}")
        if self.limit is not None and self.limit < 1:
            raise ConfigError(f"limit must be positive, got {self.limit}")
        if self.stride is not None and self.stride < 1:
            raise ConfigError(f"stride must be positive, got {self.stride}")
        if self.limit is not None and self.stride is not None and self.limit < self.stride:
            raise ConfigError(f"limit {self.limit} is below stride {self.stride}")
        if self.block_size < 1 or self.workers < 1:
            raise ConfigError("block size and workers must be positive")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        if self.theta is not None and not 0 < self.theta < 1:
            raise ConfigError(f"theta must lie in (0, 1), got {self.theta}")
        if self.alpha is not None and not 0 < self.alpha < 1:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.k < 1:
            raise ConfigError(f"K must be positive, got {self.k}")
        if self.mu is not None and not 0 < self.mu < 2:
            raise ConfigError(f"mu must lie in (0, 2), got {self.mu}")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if self.x is not None and not self.x > 0:
            raise ConfigError(f"x must be positive, got {self.x}")


def _add_table_options(parser, required=False):
    parser.add_argument("--table", type=Path, required=required, help="Mertens table file")
    parser.add_argument("--limit", type=int, help="Build a table up to this n instead of loading one")
    parser.add_argument("--stride", type=int, help="Checkpoint interval")
    parser.add_argument("--block-size", type=int, help="Sieve segment length")
    parser.add_argument("--workers", type=int, help="Worker processes for block sums")


def _add_output(parser, required=False):
    parser.add_argument("--out", type=Path, required=required, help="CSV output path")


def _add_common(parser):
    parser.add_argument("--tolerance", type=float, help="Quadrature tolerance")
    parser.add_argument("--seed", type=int, default=0, help="Seed for randomized sampling")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mertens-audit",
        description="Exact Mertens tables and numerical audits of the inverse-Hilbert estimate of |M(x)|",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sieve = commands.add_parser("sieve", help="Build and save a Mertens checkpoint table")
    sieve.add_argument("--limit", type=int, required=True, help="Largest n covered")
    sieve.add_argument("--stride", type=int, help="Checkpoint interval")
    sieve.add_argument("--block-size", type=int, help="Sieve segment length")
    sieve.add_argument("--workers", type=int, help="Worker processes for block sums")
    _add_output(sieve, required=True)
    _add_common(sieve)

    est = commands.add_parser("estimate", help="Estimate, probabilistic and classical bounds at one x")
    est.add_argument("--x", type=float, help="Evaluation point")
    est.add_argument("--n", type=int, help="Integer part of x, with --theta")
    est.add_argument("--theta", type=float, help="x = n + theta/2")
    est.add_argument("--epsilon", type=float, help="Override the integrality epsilon")
    est.add_argument("--alpha", type=float, help="Level of the probabilistic bound (defaults to 1 - epsilon)")
    est.add_argument("--table", type=Path, help="Table used to report the true |M(x)|")
    _add_output(est)
    _add_common(est)

    sweep = commands.add_parser("sweep", help="Estimate against |M(n + theta/2)| over a range of n")
    _add_table_options(sweep)
    sweep.add_argument("--n-lo", type=int, required=True, help="First n")
    sweep.add_argument("--n-hi", type=int, required=True, help="Last n")
    sweep.add_argument("--theta", type=float, default=0.999, help="x = n + theta/2")
    _add_output(sweep, required=True)
    _add_common(sweep)

    pv = commands.add_parser("pv-check", help="PV quadrature against the closed form")
    pv.add_argument("--mu", type=float, help="Single mu instead of the standard grid")
    pv.add_argument("--epsilon", type=float, help="Single epsilon instead of the standard grid")
    pv.add_argument("--x", type=float, help="Single x instead of the standard grid")
    _add_output(pv)
    _add_common(pv)

    theorem1 = commands.add_parser("theorem1", help="Partial-sum bound for the monotone catalog")
    _add_output(theorem1)
    _add_common(theorem1)

    dn = commands.add_parser("dn-check", help="Digamma identity, theta sweep and shifted harmonic sum")
    dn.add_argument("--x", type=float, help="x of the shifted harmonic sum (defaults to 7.3)")
    _add_output(dn)
    _add_common(dn)

    inverse = commands.add_parser("inverse-check", help="Mobius and forward-transform traces over A")
    _add_table_options(inverse)
    inverse.add_argument("--x", type=float, default=100.4, help="Evaluation point")
    _add_output(inverse)
    _add_common(inverse)

    pair = commands.add_parser("pair-check", help="Additive-shift Mobius pair and semiaxis Hilbert pair")
    pair.add_argument("--k", type=int, default=50, help="Truncation of the additive-shift sums")
    _add_output(pair)
    _add_common(pair)

    everything = commands.add_parser("report-all", help="Every suite against one table")
    everything.add_argument("--table", type=Path, help="Mertens table file (required to run)")
    everything.add_argument("--block-size", type=int, help="Sieve segment length")
    everything.add_argument("--theta", type=float, default=0.999, help="Sweep theta")
    everything.add_argument("--n-lo", type=int, default=10, help="First sweep n")
    everything.add_argument("--n-hi", type=int, help="Last sweep n (defaults to min(10^5, limit - 1))")
    everything.add_argument("--k", type=int, default=50, help="Truncation of the additive-shift sums")
    _add_output(everything, required=True)
    _add_common(everything)
    return parser


def parse_args(argv=None):
    """
    Parses and validates command-line arguments.

    Usage errors exit with status 2 through argparse.

    Args:
        argv: Argument list (defaults to sys.argv[1:])

    Returns:
        RunConfig
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    values = vars(args)

    def get(name, default=None):
        value = values.get(name)
        return default if value is None else value

    if args.command == "sweep" and args.table is None and args.limit is None:
        parser.error("sweep needs --table or --limit")
    if args.command == "estimate" and args.x is None and (args.n is None or args.theta is None):
        parser.error("estimate needs --x or both --n and --theta")

    try:
        return RunConfig(
            command=args.command,
            table_path=get("table"),
            limit=get("limit"),
            stride=get("stride"),
            block_size=get("block_size", default_block_size()),
            workers=get("workers", default_workers()),
            tolerance=get("tolerance", default_tolerance()),
            output_path=get("out"),
            seed=get("seed", 0),
            x=get("x"),
            n=get("n"),
            theta=get("theta"),
            n_lo=get("n_lo"),
            n_hi=get("n_hi"),
            alpha=get("alpha"),
            mu=get("mu"),
            epsilon=get("epsilon"),
            k=get("k", 50),
        )
    except ConfigError as exc:
        parser.error(str(exc))


# Suites

def _obtain_table(config):
    if config.table_path is not None:
        return load_table(config.table_path, block_size=config.block_size)
    if config.limit is not None:
        return mertens_scan(config.limit, config.stride, config.block_size, config.workers)
    raise TableFileError(f"{config.command} needs a Mertens table file (--table)")


def _relative(value, reference):
    return abs(value - reference) / abs(reference)


def pv_reports(config):
    """Quadrature vs closed form, the logarithmic branch and the inverse-estimate consistency."""
    mus = (config.mu,) if config.mu is not None else MU_GRID
    epsilons = (config.epsilon,) if config.epsilon is not None else EPSILON_GRID
    xs = (config.x,) if config.x is not None else X_GRID
    reports = []

    def quadrature_report(check_id, spec):
        inputs = {"mu": spec.mu, "epsilon": spec.epsilon, "x": spec.x}
        closed = pv_closed_form(spec)
        try:
            result = pv_integral(spec, config.tolerance)
        except ConvergenceFailure as exc:
            return CheckReport(
                check_id, dict(inputs, closed_form=closed, value=exc.best_value),
                _relative(exc.best_value, closed), PV_RELATIVE_BOUND, False,
                f"quadrature did not converge (est_error {exc.est_error:.3g})",
            )
        return gated_report(
            check_id,
            dict(inputs, closed_form=closed, value=result.value, est_error=result.est_error),
            _relative(result.value, closed),
            PV_RELATIVE_BOUND,
        )

    for mu in mus:
        for eps in epsilons:
            for x in xs:
                spec = PVSpec(mu, eps, x)
                check_id = "pv.log_branch" if spec.log_branch else "pv.closed_form"
                reports.append(quadrature_report(check_id, spec))
    if config.mu is None:
        for eps in epsilons:
            for x in xs:
                reports.append(quadrature_report("pv.log_branch", PVSpec(1.0, eps, x)))

    for eps in epsilons:
        for x in xs:
            closed = estimate(x, eps)
            inputs = {"x": x, "epsilon": eps, "estimate": closed}
            try:
                value = inverse_hilbert_estimate(x, eps, config.tolerance)
            except ConvergenceFailure as exc:
                reports.append(CheckReport(
                    "pv.inverse_estimate", inputs, _relative(exc.best_value, closed),
                    PV_RELATIVE_BOUND, False, "quadrature did not converge",
                ))
                continue
            reports.append(gated_report(
                "pv.inverse_estimate", dict(inputs, value=value), _relative(value, closed), PV_RELATIVE_BOUND
            ))
    return reports


def theorem1_reports(config):
    reports = []
    for f in monotone_catalog():
        for A in THEOREM1_HORIZONS:
            if A >= f.domain_min + 1:
                reports.append(theorem1_report(f, A))
    return reports


def dn_reports(config):
    """Seeded digamma-identity sample, the theta sweep and the shifted harmonic sum."""
    rng = np.random.default_rng(config.seed)
    ns = rng.integers(2, 1001, size=DN_SAMPLES)
    thetas = rng.uniform(0.05, 0.95, size=DN_SAMPLES)
    reports = []
    for n, theta in zip(ns.tolist(), thetas.tolist()):
        reports.extend(dn_identity_check(x_from_theta(n, theta)))
    reports.append(theta_sweep_check(50))

    choice = epsilon_for(PROP1_X if config.x is None else config.x)
    for A in (PROP1_A, 2 * PROP1_A):
        reports.append(prop1_residual(choice, A))
    reports.append(prop1_residual(x_from_theta(50, 0.9999), PROP1_A))
    return reports


def inverse_reports(config, table):
    x = 100.4 if config.x is None else config.x
    horizons = [A for A in TRACE_HORIZONS if x < A <= table.limit]
    skipped = [A for A in TRACE_HORIZONS if A not in horizons]
    if skipped:
        logger.warning(f"Traces skip A={skipped} (table limit {table.limit})")
    if not horizons:
        return []
    return mobius_inverse_trace(x, horizons, table) + forward_hilbert_trace(table, x, horizons)


def pair_reports(config):
    reports = []
    for f, grid in PARAMETRIC_PAIR_CATALOG:
        reports.extend(parametric_pair_check(f, grid, config.k))
    for y, grid in HILBERT_PAIR_CATALOG:
        reports.extend(hilbert_pair_roundtrip(y, grid, config.tolerance))
    return reports


def _emit_checks(config, reports, extra=""):
    text = summarize(reports) + extra
    sys.stdout.write(text)
    if config.output_path is not None:
        write_checks_csv(reports, config.output_path)
        write_summary(text, config.output_path)
    return EXIT_OK if all(r.passed for r in reports if r.gated) else EXIT_GATED_FAILURE


def _run_sieve(config):
    table = mertens_scan(config.limit, config.stride, config.block_size, config.workers)
    save_table(table, config.output_path)
    sys.stdout.write(f"M({config.limit}) = {mertens_at(table, config.limit + 1)}\n")
    return EXIT_OK


def _run_estimate(config):
    if config.x is not None:
        x = config.x
    else:
        x = x_from_theta(config.n, config.theta).x
    eps = integral_epsilon(x) if config.epsilon is None else config.epsilon
    alpha = 1 - eps if config.alpha is None else config.alpha
    rows = [
        ("x", x),
        ("epsilon", eps),
        ("estimate", estimate(x, eps)),
        ("quadrature_estimate", inverse_hilbert_estimate(x, eps, config.tolerance)),
        ("alpha", alpha),
        ("probabilistic_bound", probabilistic_bound(x, alpha)),
    ]
    mertens_abs = None
    if config.table_path is not None:
        mertens_abs = abs(mertens_at(load_table(config.table_path, config.block_size), x))
        rows.append(("mertens_abs", mertens_abs))
    if x > 1:
        for evaluation in classical_bounds(x, mertens_abs):
            rows.append((f"bound.{evaluation.name}", evaluation.value))
            if evaluation.holds_for_true_M is not None:
                rows.append((f"bound.{evaluation.name}.holds", evaluation.holds_for_true_M))

    sys.stdout.write("".join(f"{name} {format_quantity(value)}\n" for name, value in rows))
    if config.output_path is not None:
        write_quantities_csv(rows, config.output_path)
    return EXIT_OK


def _sweep_bounds(config, table):
    n_lo = 10 if config.n_lo is None else config.n_lo
    n_hi = min(10 ** 5, table.limit - 1) if config.n_hi is None else config.n_hi
    theta = 0.999 if config.theta is None else config.theta
    return n_lo, n_hi, theta


def _run_sweep(config):
    table = _obtain_table(config)
    n_lo, n_hi, theta = _sweep_bounds(config, table)
    records = sweep_report(n_lo, n_hi, theta, table)
    write_sweep_csv(records, config.output_path)
    text = sweep_summary(records, theta)
    sys.stdout.write(text)
    write_summary(text, config.output_path)
    return EXIT_OK


def _run_report_all(config):
    table = _obtain_table(replace(config, limit=None))
    n_lo, n_hi, theta = _sweep_bounds(config, table)
    records = sweep_report(n_lo, n_hi, theta, table)
    out = config.output_path
    write_sweep_csv(records, out.with_name(out.stem + ".sweep.csv"))

    reports = (
        pv_reports(config)
        + theorem1_reports(config)
        + dn_reports(config)
        + inverse_reports(config, table)
        + pair_reports(config)
    )
    return _emit_checks(config, reports, extra=sweep_summary(records, theta))


def run(config):
    """
    Executes one command.

    Returns:
        0 when every gated check passed, 1 when a gated check failed,
        2 for invalid inputs, 3 for I/O failures
    """
    logger.info(f"Running {config.command}")
    try:
        if config.command == "sieve":
            return _run_sieve(config)
        if config.command == "estimate":
            return _run_estimate(config)
        if config.command == "sweep":
            return _run_sweep(config)
        if config.command == "report-all":
            return _run_report_all(config)
        if config.command == "pv-check":
            return _emit_checks(config, pv_reports(config))
        if config.command == "theorem1":
            return _emit_checks(config, theorem1_reports(config))
        if config.command == "dn-check":
            return _emit_checks(config, dn_reports(config))
        if config.command == "inverse-check":
            return _emit_checks(config, inverse_reports(config, _obtain_table(config)))
        if config.command == "pair-check":
            return _emit_checks(config, pair_reports(config))
    except (OSError, TableFileError) as exc:
        logger.error(f"I/O failure in {config.command}: {exc}")
        return EXIT_IO
    except PVSpecError as exc:
        logger.error(f"{config.command} rejected its inputs: {exc}")
        return EXIT_USAGE
    except QuadratureError as exc:
        logger.error(f"{config.command} quadrature failed: {exc}")
        return EXIT_GATED_FAILURE
    except MertensAuditError as exc:
        logger.error(f"{config.command} rejected its inputs: {exc}")
        return EXIT_USAGE
    raise ConfigError(f"unknown command {config.command!r}")


def main(argv=None):
    return run(parse_args(argv))


if __name__ == '__main__':
    sys.exit(main())

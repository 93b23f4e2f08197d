#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Inversion checks
Audits of the partial-sum bound for monotone functions, the shifted harmonic
sum, the digamma identity and the additive-shift Mobius inversion
"""

import math
from dataclasses import dataclass

import numpy as np

from ..config import get_logger
from ..errors import ContractViolation, ParameterRangeError, TableRangeError
from ..sieve import mertens_range, mobius_block
from .bounds_estimator import inverse_target, x_from_theta
from .check_report import gated_report, report_only
from .special import compensated_sum, cot_pi, digamma

logger = get_logger("mertens_audit.inversion")

SPARSE_START = 1024
MAX_TERMS = 1 << 26
STABILITY = 1e-8
NEGLIGIBLE = 1e-10
SLACK = 1e-12
DERIVATIVE_TOLERANCE = 1e-8
DN_EXACT_BOUND = 1e-9
TAIL_CERTIFICATE = 1e-10
_CHUNK = 1 << 20

# c of the partial-sum bound, keyed by (identifier, domain_min)
_constant_cache = {}


@dataclass(frozen=True)
class Theorem1Result:
    """
    Partial-sum bound |sum_{a<=n<=A} f(n) - c - int_a^A f| <= f(A).

    Attributes:
        c_estimate: Limit c of sum [f(n) - int_n^(n+1) f]
        residual: sum_{a<=n<=A} f(n) - c_estimate - int_a^A f
        bound: f(A)
        A: Upper end
        satisfied: |residual| <= bound + 1e-12
        terms: Terms used for c_estimate
    """

    c_estimate: float
    residual: float
    bound: float
    A: float
    satisfied: bool
    terms: int = 0


def verify_test_function(f, upper):
    """
    Spot-checks f on [a, upper]: positive, non-increasing, and F' = f by
    central differences.

    Raises:
        ContractViolation: when any check fails
    """
    a = f.domain_min
    grid = np.unique(np.concatenate((
        np.linspace(a, a + 10, 41),
        np.geomspace(a, max(upper, a + 1) * 4, 257),
    )))
    values = np.asarray(f(grid), dtype=np.float64)
    if not np.all(values > 0):
        raise ContractViolation(f"{f.identifier} is not strictly positive on [{a}, {upper}]")
    rises = np.diff(values) > 1e-15 * np.abs(values[:-1])
    if np.any(rises):
        t = grid[1:][rises][0]
        raise ContractViolation(f"{f.identifier} increases near t={t}")

    step = 1e-5 * grid
    derivative = (np.asarray(f.antiderivative(grid + step)) - np.asarray(f.antiderivative(grid - step))) / (2 * step)
    gap = np.abs(derivative - values)
    if np.any(gap > DERIVATIVE_TOLERANCE * np.maximum(1.0, values)):
        t = grid[np.argmax(gap)]
        raise ContractViolation(f"{f.identifier}: antiderivative does not differentiate back to f near t={t}")


def _block_terms(f, lo, hi):
    """Compensated sum of f(n) - int_n^(n+1) f for n in [lo, hi]."""
    total = []
    for start in range(lo, hi + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK - 1, hi) + 1, dtype=np.float64)
        total.append(compensated_sum(np.asarray(f(n)) - np.asarray(f.integral(n, n + 1))))
    return math.fsum(total)


def theorem1_constant(f):
    """
    The constant c = sum_{n>=a} [f(n) - int_n^(n+1) f].

    Partial sums are taken at N = a + 1023, then doubled until two successive
    values agree within 1e-8 (relative to max(1, |c|)) or f(N+1) drops below
    1e-10 max(1, |c|).

    Returns:
        (c, N) where N is the last index summed
    """
    key = (f.identifier, f.domain_min)
    if key in _constant_cache:
        return _constant_cache[key]

    a = f.domain_min
    last = a + SPARSE_START - 1
    total = _block_terms(f, a, last)
    while True:
        nxt = a + 2 * (last - a + 1) - 1
        if nxt - a + 1 > MAX_TERMS:
            logger.warning(f"{f.identifier}: c did not settle within {MAX_TERMS} terms")
            break
        scale = max(1.0, abs(total))
        if float(f(last + 1)) < NEGLIGIBLE * scale:
            break
        extended = total + _block_terms(f, last + 1, nxt)
        change = abs(extended - total)
        total, last = extended, nxt
        if change < STABILITY * scale:
            break
    logger.debug(f"{f.identifier}: c = {total!r} after {last - a + 1} terms")
    _constant_cache[key] = (total, last)
    return total, last


def theorem1_residual(f, A):
    """
    Measures the partial-sum bound for a monotone test function.

    Args:
        f: MonotoneTestFunction
        A: Real upper end, >= a + 1

    Returns:
        Theorem1Result
    """
    a = f.domain_min
    if not A >= a + 1:
        raise ParameterRangeError(f"A={A} must be >= a + 1 = {a + 1}")
    verify_test_function(f, A)
    c, last = theorem1_constant(f)

    top = math.floor(A)
    partial = _block_sum(f, a, top)
    residual = partial - c - float(f.integral(a, A))
    bound = float(f(A))
    return Theorem1Result(
        c_estimate=c,
        residual=residual,
        bound=bound,
        A=A,
        satisfied=abs(residual) <= bound + SLACK,
        terms=last - a + 1,
    )


def _block_sum(f, lo, hi):
    total = []
    for start in range(lo, hi + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK - 1, hi) + 1, dtype=np.float64)
        total.append(compensated_sum(f(n)))
    return math.fsum(total)


def theorem1_report(f, A):
    """Gated CheckReport for theorem1_residual."""
    result = theorem1_residual(f, A)
    return gated_report(
        f"theorem1.{f.identifier.split('[')[0]}",
        {"a": f.domain_min, "A": A, "c_estimate": result.c_estimate, "terms": result.terms},
        result.residual,
        result.bound,
        slack=SLACK,
    )


def _check_non_integer(x):
    x = float(x)
    if x == math.floor(x):
        raise ParameterRangeError(f"x={x} is an integer, 1/(n - x) has a pole")
    return x


def harmonic_shift_sum(x, A):
    """
    Compensated sum of 1/(n - x) over 1 <= n <= A.

    Args:
        x: Positive non-integer
        A: Positive integer

    Returns:
        float
    """
    x = _check_non_integer(x)
    if A < 1:
        raise ParameterRangeError(f"A must be a positive integer, got {A}")
    total = []
    for start in range(1, A + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK - 1, A) + 1, dtype=np.float64)
        total.append(compensated_sum(1.0 / (n - x)))
    return math.fsum(total)


def prop1_residual(choice, A):
    """
    Shifted harmonic sum against ln(A/(x + eps)), report-only.

    The residual is split into d_n (the sum below 2x + eps), the constant
    c = ln(x + eps) - psi(x + eps) of the partial-sum bound for 1/(t - x)
    started at 2x + eps, and what remains (which shrinks like 1/A).

    Args:
        choice: EpsilonChoice
        A: Integer >= 2x + 1

    Returns:
        CheckReport
    """
    x, eps = choice.x, choice.epsilon
    if not A >= 2 * x + 1:
        raise ParameterRangeError(f"A={A} must be >= 2x + 1 = {2 * x + 1}")
    start = choice.shifted_integer
    total = harmonic_shift_sum(x, A)
    residual = total - math.log(A / (x + eps))
    d_n = harmonic_shift_sum(x, start - 1) if start > 1 else 0.0
    shift = x + eps
    c = math.log(shift) - digamma(shift)
    cot_term = math.pi * cot_pi(shift)
    inputs = {
        "x": x,
        "epsilon": eps,
        "A": A,
        "d_n": d_n,
        "c": c,
        "tail": residual - d_n - c,
        "cot_term": cot_term,
    }
    return report_only("prop1.shifted_harmonic", inputs, residual)


def dn_identity_check(choice):
    """
    Sum of 1/(n - x) over 1 <= n <= 2x + eps against the digamma forms.

    Returns two reports: the exact identity psi(-x-eps) - psi(x), gated at
    1e-9, and the approximate chain pi cot(pi(x+eps)) + 1/(x+eps), report-only.
    The sum runs to 2x + eps; d_n proper stops one term earlier.

    Args:
        choice: EpsilonChoice

    Returns:
        list of two CheckReport
    """
    x, eps = choice.x, choice.epsilon
    N = choice.shifted_integer
    direct = harmonic_shift_sum(x, N)
    exact = digamma(-x - eps) - digamma(x)
    shift = x + eps
    cot_term = math.pi * cot_pi(shift)
    approx = cot_term + 1.0 / shift
    inputs = {"x": x, "epsilon": eps, "N": N, "direct": direct}
    return [
        gated_report("dn_identity.exact", dict(inputs, digamma_form=exact), direct - exact, DN_EXACT_BOUND),
        report_only(
            "dn_identity.approx",
            dict(inputs, cot_term=cot_term, last_term=1.0 / (N - x), psi_shift=digamma(shift) - digamma(x)),
            direct - approx,
            "upper limit 2x+eps includes last_term, which d_n itself omits",
        ),
    ]


def theta_sweep_check(n, thetas=(0.9, 0.99, 0.999)):
    """
    |pi cot(pi(x + eps))| along x = n + theta/2 for increasing theta.

    Gated: the residual counts the steps that fail to decrease and the bound
    is 0, so the report passes only on strict decrease. The largest step is
    kept in the inputs.

    Returns:
        CheckReport
    """
    thetas = tuple(thetas)
    if len(thetas) < 2 or any(b <= a for a, b in zip(thetas, thetas[1:])):
        raise ParameterRangeError(f"thetas must be increasing with at least two entries, got {thetas}")
    magnitudes = []
    for theta in thetas:
        choice = x_from_theta(n, theta)
        magnitudes.append(abs(math.pi * cot_pi(choice.x + choice.epsilon)))
    steps = [b - a for a, b in zip(magnitudes, magnitudes[1:])]
    inputs = {"n": n, "thetas": list(thetas), "cot_terms": magnitudes, "largest_step": max(steps)}
    rising = sum(1 for s in steps if not s < 0)
    return gated_report("dn_identity.theta_sweep", inputs, float(rising), 0.0)


def _mobius_values(table, A):
    prefix = mertens_range(table, 1, A)
    return np.diff(prefix, prepend=0).astype(np.float64)


def _check_inverse_args(x, A, table):
    x = _check_non_integer(x)
    if not x > 0:
        raise ParameterRangeError(f"x must be positive, got {x}")
    if A < 1:
        raise ParameterRangeError(f"A must be a positive integer, got {A}")
    if A > table.limit:
        raise TableRangeError(f"A={A} is beyond the table limit {table.limit}")
    return x


def _inverse_sum(mu, log_gaps, A):
    return compensated_sum(mu[:A] * (math.log(A) - log_gaps[:A]))


def mobius_partial_inverse(x, A, table):
    """
    sum_{1<=n<=A} mu(n) ln(A/|n - x|) against 1/(x + eps), report-only.

    Args:
        x: Positive non-integer
        A: Truncation, <= table.limit
        table: MertensTable

    Returns:
        CheckReport
    """
    x = _check_inverse_args(x, A, table)
    mu = _mobius_values(table, A)
    log_gaps = np.log(np.abs(np.arange(1, A + 1, dtype=np.float64) - x))
    value = _inverse_sum(mu, log_gaps, A)
    epsilon, target, notes = inverse_target(x)
    inputs = {"x": x, "A": A, "epsilon": epsilon, "target": target, "value": value}
    return report_only("mobius_inverse.partial", inputs, value - target, notes)


def mobius_inverse_trace(x, A_values, table):
    """
    mobius_partial_inverse at every A, with the change from the previous A.

    mu is sieved once up to max(A_values).

    Returns:
        list of CheckReport in the order of A_values
    """
    horizons = [int(A) for A in A_values]
    if not horizons:
        return []
    top = max(horizons)
    x = _check_inverse_args(x, top, table)
    if min(horizons) < 1:
        raise ParameterRangeError(f"A must be a positive integer, got {min(horizons)}")
    mu = _mobius_values(table, top)
    log_gaps = np.log(np.abs(np.arange(1, top + 1, dtype=np.float64) - x))
    epsilon, target, notes = inverse_target(x)

    reports = []
    previous = None
    for A in horizons:
        value = _inverse_sum(mu, log_gaps, A)
        inputs = {
            "x": x,
            "A": A,
            "epsilon": epsilon,
            "target": target,
            "value": value,
            "delta_prev": None if previous is None else value - previous,
        }
        reports.append(report_only("mobius_inverse.trace", inputs, value - target, notes))
        previous = value
    logger.info(f"Mobius inverse trace at x={x} over A={horizons}")
    return reports


def parametric_pair_check(f, x_grid, K=50):
    """
    Additive-shift Mobius pair g(x) = sum_k f(k - x), f_hat(x) = sum_k mu(k) g(k - x),
    both truncated at K, report-only.

    The tail certificate adds the dropped inner terms (j > K) and the dropped
    outer terms (k > K); above 1e-10 the report is marked inconclusive.

    Args:
        f: DecayingTestFunction or callable accepting arrays
        x_grid: Real evaluation points
        K: Truncation of both sums

    Returns:
        list of CheckReport in grid order
    """
    if K < 1:
        raise ParameterRangeError(f"K must be a positive integer, got {K}")
    identifier = getattr(f, "identifier", getattr(f, "__name__", "function"))
    mu = mobius_block(1, K, max_length=K).astype(np.float64)
    k = np.arange(1, K + 1, dtype=np.float64)
    beyond = np.arange(K + 1, 2 * K + 1, dtype=np.float64)

    reports = []
    for x in x_grid:
        x = float(x)
        # row k holds f(j - k + x), j = 1..K
        shifted = k[None, :] - k[:, None] + x
        g = np.asarray(f(shifted), dtype=np.float64).sum(axis=1)
        reconstructed = compensated_sum(mu * g)
        expected = float(f(x))

        inner_tail = np.abs(mu)[:, None] * np.abs(np.asarray(f(beyond[None, :] - k[:, None] + x)))
        outer_tail = np.abs(np.asarray(f(k[None, :] - beyond[:, None] + x)))
        tail = compensated_sum(inner_tail) + compensated_sum(outer_tail)

        notes = ""
        if tail > TAIL_CERTIFICATE:
            notes = f"inconclusive: truncation tail {tail:.3g} exceeds {TAIL_CERTIFICATE:g}"
            logger.warning(f"parametric_pair.{identifier} at x={x}: {notes}")
        inputs = {"x": x, "K": K, "f": expected, "reconstructed": reconstructed, "tail": tail}
        reports.append(report_only(f"parametric_pair.{identifier}", inputs, reconstructed - expected, notes))
    return reports

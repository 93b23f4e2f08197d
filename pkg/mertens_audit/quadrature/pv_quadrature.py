#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Principal-value quadrature
PV integrals on the positive semiaxis, the closed form of the
t^(mu-1)/((t+eps)(x-t)) integral, the semiaxis Hilbert transform pair and
the piecewise-constant forward transform of M
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ..analysis.bounds_estimator import inverse_target
from ..analysis.check_report import CheckReport, gated_report, report_only
from ..analysis.special import compensated_sum, cot_pi
from ..config import default_tolerance, get_logger
from ..errors import (
    ConvergenceFailure,
    ParameterRangeError,
    PVSpecError,
    TableRangeError,
)
from ..sieve import mertens_range

logger = get_logger("mertens_audit.quadrature")

MIN_TOLERANCE = 1e-12
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 200
ROUNDTRIP_BOUND = 1e-4
# the tail start is capped at exp(340) so T and log(T) stay finite for mu near 2
_LOG_T_CAP = 340.0


@dataclass(frozen=True)
class PVSpec:
    """
    Parameters of PV int_0^inf t^(mu-1) / ((t + epsilon)(x - t)) dt.

    Attributes:
        mu: Exponent parameter in (0, 2); mu = 1 takes the logarithmic branch
        epsilon: Positive shift of the second pole, -epsilon
        x: Positive location of the principal-value pole
    """

    mu: float
    epsilon: float
    x: float

    def __post_init__(self):
        if not 0 < self.mu < 2:
            raise PVSpecError(f"mu must lie in (0, 2), got {self.mu}")
        if not self.epsilon > 0:
            raise PVSpecError(f"epsilon must be positive, got {self.epsilon}")
        if not self.x > 0:
            raise PVSpecError(f"x must be positive, got {self.x}")

    @property
    def log_branch(self):
        return self.mu == 1


@dataclass(frozen=True)
class QuadratureResult:
    """
    Attributes:
        value: Integral estimate at the finest refinement level
        est_error: A-posteriori error estimate (level difference plus QUADPACK estimates)
        evaluations: Integrand evaluations over all levels
    """

    value: float
    est_error: float
    evaluations: int

    def __post_init__(self):
        if not self.est_error >= 0:
            raise PVSpecError(f"est_error must be non-negative, got {self.est_error}")
        if self.evaluations < 1:
            raise PVSpecError(f"evaluations must be positive, got {self.evaluations}")


def pv_closed_form(spec):
    """
    Closed form of PV int_0^inf t^(mu-1) / ((t + eps)(x - t)) dt.

    Args:
        spec: PVSpec

    Returns:
        float; ln(x/eps)/(x+eps) on the mu = 1 branch
    """
    mu, eps, x = spec.mu, spec.epsilon, spec.x
    if spec.log_branch:
        return math.log(x / eps) / (x + eps)
    return math.pi / (x + eps) * (
        eps ** (mu - 1) / math.sin(mu * math.pi) + x ** (mu - 1) * cot_pi(mu)
    )


def _check_tolerance(tolerance):
    tolerance = default_tolerance() if tolerance is None else float(tolerance)
    if not tolerance >= MIN_TOLERANCE:
        raise PVSpecError(f"tolerance must be >= {MIN_TOLERANCE}, got {tolerance}")
    return tolerance


def _quad(func, a, b, tolerance, **kwargs):
    """scipy quad returning (value, abserr, neval); QUADPACK messages go to the debug log."""
    result = integrate.quad(
        func, a, b,
        epsabs=tolerance / 20, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT, full_output=1,
        **kwargs,
    )
    value, abserr, info = result[0], result[1], result[2]
    if len(result) > 3:
        logger.debug(f"QUADPACK on [{a}, {b}]: {result[3]}")
    return value, abserr, int(info.get("neval", 0))


def _pv_level(h, beta, x, delta, tolerance, upper, tail):
    """
    PV int_0^inf t^beta h(t) / (t - x) dt for one subtraction window delta.

    Pieces: [0, x/2] under t = u^2 with the algebraic endpoint weight,
    [x/2, x - delta] and [x + delta, upper] under t - x = +-e^v, the
    symmetric window folded onto [0, delta], and beyond upper either the
    analytic tail or an infinite-range quad.

    Returns:
        (value, abserr, evaluations)
    """
    def g(t):
        return t ** beta * h(t) if beta else h(t)

    pieces = []
    u_max = math.sqrt(x / 2)
    alpha = 2 * beta + 1
    if alpha == 0:
        pieces.append(_quad(lambda u: 2 * h(u * u) / (u * u - x), 0.0, u_max, tolerance))
    else:
        pieces.append(_quad(
            lambda u: 2 * h(u * u) / (u * u - x), 0.0, u_max, tolerance,
            weight="alg", wvar=(alpha, 0.0),
        ))

    log_delta = math.log(delta)
    value, abserr, neval = _quad(lambda v: g(x - math.exp(v)), log_delta, math.log(x / 2), tolerance)
    pieces.append((-value, abserr, neval))

    pieces.append(_quad(lambda s: (g(x + s) - g(x - s)) / s, 0.0, delta, tolerance))
    pieces.append(_quad(lambda v: g(x + math.exp(v)), log_delta, math.log(upper - x), tolerance))

    if tail is not None:
        pieces.append((tail(upper), 0.0, 0))
    else:
        pieces.append(_quad(lambda t: g(t) / (t - x), upper, math.inf, tolerance))

    logger.debug(f"PV pieces at x={x}, delta={delta}: {[p[0] for p in pieces]}")
    return (
        math.fsum(p[0] for p in pieces),
        math.fsum(p[1] for p in pieces),
        sum(p[2] for p in pieces),
    )


def _pv_refined(h, beta, x, tolerance, window, refine, strict, upper=None, tail=None):
    """Canonical (t - x) PV integral at window delta and, when refining, delta/2."""
    if not x > 0:
        raise PVSpecError(f"x must be positive, got {x}")
    delta = min(1.0, x / 4) if window is None else float(window)
    if not 0 < delta <= x / 4:
        raise PVSpecError(f"window must lie in (0, x/4], got {delta}")
    upper = 2 * x + 1 if upper is None else upper

    coarse, coarse_err, coarse_eval = _pv_level(h, beta, x, delta, tolerance, upper, tail)
    if not refine:
        value, est_error, evaluations = coarse, coarse_err, coarse_eval
    else:
        fine, fine_err, fine_eval = _pv_level(h, beta, x, delta / 2, tolerance, upper, tail)
        value = fine
        est_error = abs(coarse - fine) + fine_err
        evaluations = coarse_eval + fine_eval

    if math.isnan(est_error):
        est_error = math.inf

    if not math.isfinite(value) or est_error > tolerance:
        if strict:
            raise ConvergenceFailure(
                f"PV integral at x={x} reached est_error {est_error:.3g} > tolerance {tolerance:.3g}",
                best_value=value,
                est_error=est_error,
            )
        logger.debug(f"PV integral at x={x} kept with est_error {est_error:.3g}")
    return QuadratureResult(value=value, est_error=est_error, evaluations=max(evaluations, 1))


def _tail_start(spec, tolerance):
    # T^(mu-2)/(2-mu) < tolerance/10
    exponent = 2 - spec.mu
    log_t = (math.log(10) - math.log(tolerance * exponent)) / exponent
    return max(math.exp(min(log_t, _LOG_T_CAP)), 16 * (spec.x + spec.epsilon + 1))


def _pv_tail(spec, start):
    """int_start^inf t^(mu-1) / ((t + eps)(t - x)) dt as a convergent series in x/start."""
    mu, eps, x = spec.mu, spec.epsilon, spec.x
    lead = start ** (mu - 1)
    terms = []
    for k in range(1, 200):
        term = lead * ((x / start) ** k - (-eps / start) ** k) / (k + 1 - mu)
        terms.append(term)
        if abs(term) <= 1e-17 * abs(math.fsum(terms)):
            break
    return math.fsum(terms) / (x + eps)


def pv_integral(spec, tolerance=None, window=None, refine=True, strict=True):
    """
    Numerically evaluates PV int_0^inf t^(mu-1) / ((t + eps)(x - t)) dt.

    The value follows the (x - t) sign of the closed form; internally the
    (t - x) integral is computed and negated.

    Args:
        spec: PVSpec
        tolerance: Absolute target, >= 1e-12 (defaults to MERTENS_TOLERANCE)
        window: Subtraction half-width delta (defaults to min(1, x/4))
        refine: Also evaluate at delta/2 and report the level difference
        strict: Raise ConvergenceFailure when est_error exceeds tolerance

    Returns:
        QuadratureResult
    """
    tolerance = _check_tolerance(tolerance)
    eps = spec.epsilon
    upper = _tail_start(spec, tolerance)
    result = _pv_refined(
        lambda t: 1.0 / (t + eps),
        spec.mu - 1,
        spec.x,
        tolerance,
        window,
        refine,
        strict,
        upper=upper,
        tail=lambda start: _pv_tail(spec, start),
    )
    return QuadratureResult(-result.value, result.est_error, result.evaluations)


def inverse_hilbert_estimate(x, epsilon, tolerance=None):
    """
    -(sqrt(x)/pi^2) PV int_0^inf dt / ((t + eps) sqrt(t) (t - x)), by quadrature.

    Analytically equal to sqrt(x) / (pi sqrt(eps) (x + eps)).

    Args:
        x: Positive real
        epsilon: Positive real
        tolerance: Quadrature tolerance

    Returns:
        float
    """
    result = pv_integral(PVSpec(mu=0.5, epsilon=epsilon, x=x), tolerance)
    return math.sqrt(x) / math.pi ** 2 * result.value


def semiaxis_hilbert(y, x, tolerance=None, window=None, refine=True, strict=True):
    """
    Forward transform f(x) = PV int_0^inf y(t) / (t - x) dt.

    Args:
        y: Callable on the positive semiaxis, decaying at infinity
        x: Positive real

    Returns:
        QuadratureResult
    """
    tolerance = _check_tolerance(tolerance)
    return _pv_refined(lambda t: float(y(t)), 0, x, tolerance, window, refine, strict)


def inverse_semiaxis_hilbert(f, x, tolerance=None, window=None, refine=True, strict=True):
    """
    Inverse transform y(x) = -(sqrt(x)/pi^2) PV int_0^inf f(t) / (sqrt(t) (t - x)) dt.

    Args:
        f: Forward transform as a callable on the positive semiaxis
        x: Positive real

    Returns:
        QuadratureResult
    """
    tolerance = _check_tolerance(tolerance)
    result = _pv_refined(lambda t: float(f(t)), -0.5, x, tolerance, window, refine, strict)
    scale = math.sqrt(x) / math.pi ** 2
    return QuadratureResult(-scale * result.value, scale * result.est_error, result.evaluations)


def hilbert_pair_roundtrip(y, x_grid, tolerance=None, bound=ROUNDTRIP_BOUND):
    """
    Forward then inverse semiaxis transform of y, compared with y on x_grid.

    The inner forward transform runs at tolerance at a single window level;
    the outer inverse runs at a tolerance 100 times looser (capped at bound/100)
    since its integrand carries the inner quadrature error. A point whose outer
    quadrature misses its tolerance is still gated on the residual and noted.

    Args:
        y: DecayingTestFunction or callable
        x_grid: Positive evaluation points
        tolerance: Inner quadrature tolerance
        bound: Gate on |y_hat(x) - y(x)|

    Returns:
        list of CheckReport in grid order
    """
    tolerance = _check_tolerance(tolerance)
    outer_tolerance = min(max(100 * tolerance, tolerance), bound / 100)
    identifier = getattr(y, "identifier", getattr(y, "__name__", "function"))

    def forward(t):
        return semiaxis_hilbert(y, t, tolerance, refine=False, strict=False).value

    reports = []
    for x in x_grid:
        expected = float(y(x))
        notes = ""
        try:
            result = inverse_semiaxis_hilbert(forward, x, outer_tolerance)
            reconstructed, est_error = result.value, result.est_error
        except ConvergenceFailure as exc:
            reconstructed, est_error = exc.best_value, exc.est_error
            notes = f"outer quadrature missed tolerance {outer_tolerance:.3g} (est_error {est_error:.3g})"
            logger.warning(f"hilbert_pair.{identifier} at x={x}: {notes}")
        residual = reconstructed - expected
        if not math.isfinite(residual):
            reports.append(CheckReport(
                f"hilbert_pair.{identifier}", {"x": x, "y": expected}, residual, bound, False,
                notes or "non-finite reconstruction",
            ))
            continue
        reports.append(gated_report(
            f"hilbert_pair.{identifier}",
            {"x": x, "y": expected, "reconstructed": reconstructed, "est_error": est_error},
            residual,
            bound,
            notes,
        ))
    return reports


# Piecewise-constant forward transform of M

def _check_shift(x):
    x = float(x)
    if not x > 0:
        raise ParameterRangeError(f"x must be positive, got {x}")
    if x == math.floor(x):
        raise ParameterRangeError(f"x={x} is an integer, the pole sits on a knot")
    return x


def forward_hilbert_weights(x, A):
    """
    Weights ln((n+1-x)/(n-x)) for n = 1..A.

    The interval straddling x (n = floor(x)) takes the principal-value
    pairing ln((n+1-x)/(x-n)).

    Returns:
        float64 numpy array of length A
    """
    x = _check_shift(x)
    n = np.arange(1, A + 1, dtype=np.float64)
    straddle = math.floor(x)
    with np.errstate(invalid="ignore", divide="ignore"):
        weights = np.log1p(1.0 / (n - x))
    if 1 <= straddle <= A:
        weights[straddle - 1] = math.log((straddle + 1 - x) / (x - straddle))
    return weights


def forward_hilbert_sum(values, x):
    """Compensated sum of values[n-1] * ln((n+1-x)/(n-x)) over n = 1..len(values)."""
    values = np.asarray(values, dtype=np.float64)
    return compensated_sum(values * forward_hilbert_weights(x, len(values)))


def _check_horizon(table, x, A):
    if A < 1:
        raise ParameterRangeError(f"A must be a positive integer, got {A}")
    if not x < A:
        raise ParameterRangeError(f"x={x} must be below A={A}")
    if A > table.limit:
        raise TableRangeError(f"A={A} is beyond the table limit {table.limit}")


def forward_hilbert_step(table, x, A):
    """
    int_0^A M(t)/(t - x) dt for the step function M, summed term by term.

    Args:
        table: MertensTable with limit >= A
        x: Positive non-integer below A
        A: Truncation point

    Returns:
        float
    """
    x = _check_shift(x)
    _check_horizon(table, x, A)
    return forward_hilbert_sum(mertens_range(table, 1, A), x)


def forward_hilbert_trace(table, x, A_values):
    """
    Report-only trace of forward_hilbert_step against 1/(x + eps) for each A.

    M is sieved once up to max(A_values); each report records the value,
    the target and the change from the previous A.

    Returns:
        list of CheckReport in the order of A_values
    """
    x = _check_shift(x)
    horizons = [int(A) for A in A_values]
    if not horizons:
        return []
    top = max(horizons)
    _check_horizon(table, x, min(horizons))
    _check_horizon(table, x, top)
    weighted = mertens_range(table, 1, top).astype(np.float64) * forward_hilbert_weights(x, top)
    epsilon, target, notes = inverse_target(x)

    reports = []
    previous = None
    for A in horizons:
        value = compensated_sum(weighted[:A])
        inputs = {
            "x": x,
            "A": A,
            "epsilon": epsilon,
            "target": target,
            "value": value,
            "delta_prev": None if previous is None else value - previous,
        }
        reports.append(report_only("forward_hilbert.trace", inputs, value - target, notes))
        previous = value
    logger.info(f"Forward transform trace at x={x} over A={horizons}")
    return reports

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Bounds estimator
The inverse-Hilbert estimate of |M(x)|, the epsilon-integrality rule, the
probabilistic square-root bound and the catalog of classical explicit bounds
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from ..config import get_logger
from ..errors import EpsilonDegenerate, ParameterRangeError, TableRangeError
from ..sieve import mertens_range

logger = get_logger("mertens_audit.estimator")

INTEGRALITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class EpsilonChoice:
    """
    Evaluation point x = n + theta/2 with the epsilon that makes 2x + epsilon an integer.

    Attributes:
        x: Evaluation point
        n: Integer part of x
        theta: 2 * (x - n), in (0, 1)
        epsilon: ceil(2x) - 2x, in (0, 1); equals 1 - theta
    """

    x: float
    n: int
    theta: float
    epsilon: float

    def __post_init__(self):
        if not 0 < self.theta < 1:
            raise ParameterRangeError(f"theta must lie in (0, 1), got {self.theta}")
        if not 0 < self.epsilon < 1:
            raise ParameterRangeError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        scale = max(1.0, abs(self.x))
        if abs(self.x - (self.n + self.theta / 2)) > INTEGRALITY_TOLERANCE * scale:
            raise ParameterRangeError(f"x={self.x} is not n + theta/2 for n={self.n}, theta={self.theta}")
        total = 2 * self.x + self.epsilon
        if abs(total - round(total)) > INTEGRALITY_TOLERANCE:
            raise ParameterRangeError(f"2x + epsilon = {total!r} is not an integer")
        if abs(self.epsilon - (1 - self.theta)) > INTEGRALITY_TOLERANCE * scale:
            raise ParameterRangeError(f"epsilon={self.epsilon} differs from 1 - theta={1 - self.theta}")

    @property
    def shifted_integer(self):
        """The integer 2x + epsilon."""
        return int(round(2 * self.x + self.epsilon))


def integral_epsilon(x):
    """
    The unique epsilon in (0, 1) with 2x + epsilon integral.

    Args:
        x: Positive real whose double is not an integer

    Returns:
        float epsilon = ceil(2x) - 2x
    """
    x = float(x)
    if not x > 0:
        raise ParameterRangeError(f"x must be positive, got {x}")
    doubled = 2 * x
    if abs(doubled - round(doubled)) <= INTEGRALITY_TOLERANCE:
        raise EpsilonDegenerate(f"2x = {doubled!r} is already an integer, epsilon would be 0")
    return math.ceil(doubled) - doubled


def epsilon_for(x):
    """
    Binds x to its (n, theta, epsilon) parameterization.

    Args:
        x: Real number > 1 with 2x non-integral and fractional part below 1/2

    Returns:
        EpsilonChoice
    """
    x = float(x)
    if not x > 1:
        raise ParameterRangeError(f"x must be > 1, got {x}")
    epsilon = integral_epsilon(x)
    n = math.floor(x)
    theta = 2 * (x - n)
    if theta >= 1:
        raise ParameterRangeError(
            f"x={x} has fractional part above 1/2, so no theta in (0, 1) gives x = n + theta/2"
        )
    return EpsilonChoice(x=x, n=n, theta=theta, epsilon=epsilon)


def x_from_theta(n, theta):
    """
    Builds x = n + theta/2 and its epsilon (= 1 - theta).

    Args:
        n: Positive integer
        theta: Real in the open interval (0, 1)

    Returns:
        EpsilonChoice
    """
    if not 0 < theta < 1:
        raise ParameterRangeError(f"theta must lie in (0, 1), got {theta}")
    if n < 1:
        raise ParameterRangeError(f"n must be a positive integer, got {n}")
    x = n + theta / 2
    doubled = 2 * x
    # theta within an ulp of 0 or 1 leaves 2x on an integer
    epsilon = math.ceil(doubled) - doubled if doubled != math.floor(doubled) else 1 - theta
    return EpsilonChoice(x=x, n=n, theta=theta, epsilon=epsilon)


def estimate(x, epsilon):
    """
    sqrt(x) / (pi * sqrt(epsilon) * (x + epsilon)).

    Integrality of 2x + epsilon is not enforced here so quadrature
    cross-checks can probe arbitrary (x, epsilon).
    """
    if not x > 0 or not epsilon > 0:
        raise ParameterRangeError(f"x and epsilon must be positive, got x={x}, epsilon={epsilon}")
    return math.sqrt(x) / (math.pi * math.sqrt(epsilon) * (x + epsilon))


def estimate_alpha(x, alpha):
    """The estimate written with alpha = 1 - epsilon."""
    if not 0 < alpha < 1:
        raise ParameterRangeError(f"alpha must lie in (0, 1), got {alpha}")
    return estimate(x, 1 - alpha)


def probabilistic_bound(x, alpha):
    """
    sqrt(6/pi^2) / sqrt(alpha) * sqrt(x), the bound holding with probability
    1 - alpha under the random-sequence model of mu.
    """
    if not 0 < alpha < 1:
        raise ParameterRangeError(f"alpha must lie in (0, 1), got {alpha}")
    if not x > 0:
        raise ParameterRangeError(f"x must be positive, got {x}")
    return math.sqrt(6 / math.pi ** 2) / math.sqrt(alpha) * math.sqrt(x)


# Classical explicit bounds

@dataclass(frozen=True)
class BoundSpec:
    """
    One explicit bound on |M(x)|.

    Attributes:
        name: Catalog identifier
        validity_min: Smallest admissible x
        parameters: Named constants used by the formula
        formula: Callable (x, parameters) -> bound value
        strict_validity: Validity is x > validity_min instead of x >= validity_min
        strict_inequality: The bound is |M(x)| < value instead of <=
        parameterized: The formula contains a constant the literature leaves unspecified
    """

    name: str
    validity_min: float
    parameters: Mapping[str, float]
    formula: Callable[[float, Mapping[str, float]], float] = field(repr=False)
    strict_validity: bool = False
    strict_inequality: bool = False
    parameterized: bool = False

    def admits(self, x):
        return x > self.validity_min if self.strict_validity else x >= self.validity_min

    def evaluate(self, x, **overrides):
        if not self.admits(x):
            raise ParameterRangeError(f"{self.name} is not valid at x={x} (min {self.validity_min})")
        params = dict(self.parameters, **overrides)
        value = self.formula(x, params)
        if not math.isfinite(value):
            raise ParameterRangeError(f"{self.name} is not finite at x={x}")
        return value


@dataclass(frozen=True)
class BoundEvaluation:
    """Value of one catalog bound at x, compared with |M(x)| when it is known."""

    name: str
    x: float
    value: float
    holds_for_true_M: Optional[bool] = None
    parameterized: bool = False


def _walfisz(x, p):
    log_x = math.log(x)
    return x * math.exp(-p["c"] * log_x ** 0.6 * math.log(log_x) ** -0.2)


BOUND_CATALOG = (
    BoundSpec("walfisz", math.e, {"c": 1.0}, _walfisz, strict_validity=True, parameterized=True),
    BoundSpec("macleod", 1.0, {"slope": 1 / 80, "offset": 11 / 2},
              lambda x, p: (x + 1) * p["slope"] + p["offset"]),
    BoundSpec("el_marraki_sqrt_log", 142194.0, {"k": 0.002969},
              lambda x, p: p["k"] * x / math.sqrt(math.log(x))),
    BoundSpec("el_marraki_log", 1.0, {"k": 0.6437752},
              lambda x, p: p["k"] * x / math.log(x), strict_validity=True),
    BoundSpec("ramare", 464402.0, {"a": 0.0146, "b": 0.1098},
              lambda x, p: (p["a"] * math.log(x) - p["b"]) / math.log(x) ** 2 * x),
    BoundSpec("linear_4345", 2160535.0, {"divisor": 4345.0},
              lambda x, p: x / p["divisor"], strict_validity=True, strict_inequality=True),
    BoundSpec("log_power_11_9", 685.0, {"k": 0.58782, "power": 11 / 9},
              lambda x, p: p["k"] * x / math.log(x) ** p["power"],
              strict_validity=True, strict_inequality=True),
)


def bound_spec(name):
    for spec in BOUND_CATALOG:
        if spec.name == name:
            return spec
    raise KeyError(name)


def classical_bounds(x, mertens_abs=None, walfisz_c=1.0):
    """
    Evaluates every catalog bound admissible at x.

    Args:
        x: Real number > 1
        mertens_abs: |M(x)| if known, used to fill holds_for_true_M
        walfisz_c: The unspecified constant of the Walfisz bound

    Returns:
        list of BoundEvaluation in catalog order; inadmissible entries are omitted
    """
    if not x > 1:
        raise ParameterRangeError(f"x must be > 1, got {x}")
    evaluations = []
    for spec in BOUND_CATALOG:
        if not spec.admits(x):
            continue
        overrides = {"c": walfisz_c} if spec.parameterized else {}
        value = spec.evaluate(x, **overrides)
        holds = None
        if mertens_abs is not None:
            holds = mertens_abs < value if spec.strict_inequality else mertens_abs <= value
        evaluations.append(BoundEvaluation(spec.name, x, value, holds, spec.parameterized))
    return evaluations


# Sweeps against the exact table

@dataclass(frozen=True)
class EstimateRecord:
    """One sweep point: the estimate at x = n + theta/2 against the exact |M(x)|."""

    n: int
    theta: float
    x: float
    epsilon: float
    mertens: int
    mertens_abs: int
    estimate: float
    satisfied: bool


def sweep_report(n_lo, n_hi, theta, table):
    """
    Compares the estimate with |M(x)| for x = n + theta/2, n in [n_lo, n_hi].

    Args:
        n_lo: First n, >= 1
        n_hi: Last n, <= table.limit - 1 (an empty list when n_hi < n_lo)
        theta: Real in (0, 1)
        table: MertensTable

    Returns:
        list of EstimateRecord in ascending n
    """
    if not 0 < theta < 1:
        raise ParameterRangeError(f"theta must lie in (0, 1), got {theta}")
    if n_hi < n_lo:
        return []
    if n_lo < 1 or n_hi > table.limit - 1:
        raise TableRangeError(f"sweep [{n_lo}, {n_hi}] is outside [1, {table.limit - 1}]")

    # M(n + theta/2) sums mu(k) over k <= n, the integer-form M(n)
    mertens_values = mertens_range(table, n_lo, n_hi)
    records = []
    for n, m in zip(range(n_lo, n_hi + 1), mertens_values.tolist()):
        choice = x_from_theta(n, theta)
        value = estimate(choice.x, choice.epsilon)
        records.append(EstimateRecord(
            n=n,
            theta=theta,
            x=choice.x,
            epsilon=choice.epsilon,
            mertens=m,
            mertens_abs=abs(m),
            estimate=value,
            satisfied=abs(m) < value,
        ))
    logger.info(
        f"Sweep n in [{n_lo}, {n_hi}], theta={theta}: "
        f"{sum(r.satisfied for r in records)}/{len(records)} satisfied"
    )
    return records


def satisfied_fraction(records):
    """Share of records with |M(x)| below the estimate (0.0 for no records)."""
    if not records:
        return 0.0
    return sum(r.satisfied for r in records) / len(records)


def inverse_target(x):
    """
    The value 1/(x + eps) the inversion traces are measured against.

    Returns:
        (epsilon, target, note); epsilon is None and the target falls back
        to 1/x when 2x is already an integer
    """
    try:
        epsilon = integral_epsilon(x)
    except EpsilonDegenerate:
        return None, 1.0 / x, "2x is an integer, target falls back to 1/x"
    return epsilon, 1.0 / (x + epsilon), ""

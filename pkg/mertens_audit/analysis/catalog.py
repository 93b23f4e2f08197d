"""
Mertens Audit - Test function catalogs
Monotone functions for the partial-sum bound, decaying functions for the
transform-pair checks
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class MonotoneTestFunction:
    """
    Positive, non-increasing function on [domain_min, inf) with an exact antiderivative.

    Attributes:
        identifier: Catalog name
        evaluator: Vectorized f(t)
        antiderivative: Vectorized F(t) with F' = f
        domain_min: Integer start a of the summation
        segment_integral: Optional cancellation-free F(hi) - F(lo)
    """

    identifier: str
    evaluator: Callable
    antiderivative: Callable
    domain_min: int
    segment_integral: Optional[Callable] = None

    def __call__(self, t):
        return self.evaluator(t)

    def integral(self, lo, hi):
        if self.segment_integral is not None:
            return self.segment_integral(lo, hi)
        return self.antiderivative(hi) - self.antiderivative(lo)


@dataclass(frozen=True)
class DecayingTestFunction:
    """Smooth, fast-decaying function used by the transform-pair checks."""

    identifier: str
    evaluator: Callable

    def __call__(self, t):
        return self.evaluator(t)


INVERSE_T = MonotoneTestFunction(
    "inverse_t",
    lambda t: 1.0 / np.asarray(t, dtype=float),
    lambda t: np.log(t),
    1,
    lambda lo, hi: np.log1p((np.asarray(hi, dtype=float) - lo) / lo),
)

INVERSE_SQUARE = MonotoneTestFunction(
    "inverse_square",
    lambda t: 1.0 / np.asarray(t, dtype=float) ** 2,
    lambda t: -1.0 / np.asarray(t, dtype=float),
    1,
    lambda lo, hi: (np.asarray(hi, dtype=float) - lo) / (np.asarray(lo, dtype=float) * hi),
)


def shifted_inverse(x, epsilon):
    """
    f(t) = 1/(t - x) started at a = 2x + epsilon.

    Args:
        x: Non-integer shift
        epsilon: Value making 2x + epsilon an integer

    Returns:
        MonotoneTestFunction
    """
    start = int(round(2 * x + epsilon))
    return MonotoneTestFunction(
        f"shifted_inverse[x={x!r}]",
        lambda t: 1.0 / (np.asarray(t, dtype=float) - x),
        lambda t: np.log(np.asarray(t, dtype=float) - x),
        start,
        lambda lo, hi: np.log1p((np.asarray(hi, dtype=float) - lo) / (np.asarray(lo, dtype=float) - x)),
    )


def monotone_catalog(x=7.3, epsilon=0.4):
    return (INVERSE_T, INVERSE_SQUARE, shifted_inverse(x, epsilon))


ZERO = DecayingTestFunction("zero", lambda t: 0.0 * np.asarray(t, dtype=float))
RATIONAL_PAIR = DecayingTestFunction(
    "rational_pair", lambda t: 1.0 / ((np.asarray(t, dtype=float) + 1.0) * (np.asarray(t, dtype=float) + 2.0))
)
CUBIC_RATIONAL = DecayingTestFunction(
    "cubic_rational", lambda t: np.asarray(t, dtype=float) / (1.0 + np.asarray(t, dtype=float) ** 3)
)
GAUSSIAN = DecayingTestFunction("gaussian", lambda t: np.exp(-np.asarray(t, dtype=float) ** 2))
CUBIC_EXPONENTIAL = DecayingTestFunction(
    "cubic_exponential", lambda t: np.exp(-np.abs(np.asarray(t, dtype=float)) ** 3)
)

# test function and x grid for the semiaxis transform pair
HILBERT_PAIR_CATALOG = (
    (ZERO, (0.5, 2.5, 7.5)),
    (RATIONAL_PAIR, (0.5, 2.5, 7.5)),
    (CUBIC_RATIONAL, (1.5,)),
    (GAUSSIAN, (0.5, 1.5)),
)

# test function and x grid for the additive-shift inversion pair
PARAMETRIC_PAIR_CATALOG = (
    (ZERO, (0.3, 0.7)),
    (GAUSSIAN, (0.3,)),
    (CUBIC_EXPONENTIAL, (0.3, 0.7)),
)

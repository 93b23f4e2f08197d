"""
Mertens Audit - Special functions
Digamma, cotangent of pi*y with exact argument reduction, and compensated sums
"""

import math

import numpy as np

from ..errors import DigammaPoleError

_SHIFT_TARGET = 8.0
_COMPENSATED_CHUNK = 1 << 20


def compensated_sum(values):
    """
    Sum of a float sequence via error-free transformations (math.fsum).

    Large arrays are summed in chunks; each chunk sum is correctly rounded
    and the chunk sums are combined with fsum again.
    """
    array = np.asarray(values, dtype=np.float64).ravel()
    if array.size <= _COMPENSATED_CHUNK:
        return math.fsum(array.tolist())
    partials = [
        math.fsum(array[i:i + _COMPENSATED_CHUNK].tolist())
        for i in range(0, array.size, _COMPENSATED_CHUNK)
    ]
    return math.fsum(partials)


def cot_pi(y):
    """cot(pi * y), reducing y modulo 1 before multiplying by pi."""
    reduced = y - round(y)
    if reduced == 0:
        raise DigammaPoleError(f"cot(pi*y) has a pole at y={y}")
    return 1.0 / math.tan(math.pi * reduced)


def digamma(y):
    """
    psi(y), the logarithmic derivative of the Gamma function.

    Recurrence shifts y up to at least 8, the asymptotic series finishes the
    job, and the reflection formula covers y < 0.

    Args:
        y: Real number that is not 0, -1, -2, ...

    Returns:
        float
    """
    y = float(y)
    if y <= 0 and y == math.floor(y):
        raise DigammaPoleError(f"digamma has a pole at y={y}")
    if y < 0:
        return digamma(1.0 - y) - math.pi * cot_pi(y)

    steps = max(0, math.ceil(_SHIFT_TARGET - y))
    shifted = [1.0 / (y + j) for j in range(steps)]
    z = y + steps
    r = 1.0 / z
    r2 = r * r
    series = math.log(z) - 0.5 * r - r2 * (
        1 / 12 - r2 * (1 / 120 - r2 * (1 / 252 - r2 * (1 / 240 - r2 * (
            1 / 132 - r2 * (691 / 32760 - r2 / 12)))))
    )
    return series - math.fsum(shifted)

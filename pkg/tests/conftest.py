import numpy as np
import pytest

from mertens_audit.sieve import mertens_scan, mobius_naive


@pytest.fixture(scope="session")
def small_table():
    """M(n) checkpoints to 10^4, stride 64, built in blocks of 1000."""
    return mertens_scan(10 ** 4, stride=64, block_size=1000)


@pytest.fixture(scope="session")
def trace_table():
    """M(n) checkpoints to 10^5, for the A-dependence traces."""
    return mertens_scan(10 ** 5, stride=1024, block_size=1 << 15)


@pytest.fixture(scope="session")
def naive_prefix():
    """Integer-form M(n) for n = 1..10^4 from the trial-division oracle."""
    mu = np.array([mobius_naive(n) for n in range(1, 10 ** 4 + 1)], dtype=np.int64)
    return np.cumsum(mu)

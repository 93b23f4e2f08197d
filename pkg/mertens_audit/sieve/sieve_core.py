#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Sieve core
Exact mu(n), omega(n) and Mertens prefix sums via a block-segmented sieve
"""

import math
import operator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..config import default_block_size, default_stride, default_workers, get_logger
from ..errors import MertensOverflowError, SieveError, TableRangeError

logger = get_logger("mertens_audit.sieve")

UINT64_MAX = (1 << 64) - 1
INT64_MAX = (1 << 63) - 1


def _positive_int(value, name):
    try:
        n = operator.index(value)
    except TypeError:
        raise SieveError(f"{name} must be an integer, got {value!r}")
    if n < 1:
        raise SieveError(f"{name} must be >= 1, got {n}")
    return n


def mobius_naive(n):
    """
    Computes mu(n) by trial division. Independent oracle for the sieve.

    Args:
        n: Positive integer not exceeding 2^64 - 1

    Returns:
        int in {-1, 0, 1}
    """
    n = _positive_int(n, "n")
    if n > UINT64_MAX:
        raise SieveError(f"n exceeds the unsigned 64-bit range: {n}")
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p = 3 if p == 2 else p + 2
    if m > 1:
        result = -result
    return result


def omega(n):
    """
    Counts the distinct prime divisors of n.

    Args:
        n: Positive integer

    Returns:
        int, 0 for n = 1
    """
    n = _positive_int(n, "n")
    count = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            count += 1
            while m % p == 0:
                m //= p
        p = 3 if p == 2 else p + 2
    if m > 1:
        count += 1
    return count


@lru_cache(maxsize=16)
def sieving_primes(bound):
    """
    All primes <= bound from an odd-only sieve of Eratosthenes.

    Args:
        bound: Upper bound (inclusive)

    Returns:
        Read-only int64 numpy array of primes in ascending order
    """
    if bound < 2:
        primes = np.array([], dtype=np.int64)
    else:
        # index i stands for the odd number 2i + 1
        size = (bound - 1) // 2 + 1
        is_odd_prime = np.ones(size, dtype=bool)
        is_odd_prime[0] = False
        for i in range(1, (math.isqrt(bound) - 1) // 2 + 1):
            if is_odd_prime[i]:
                p = 2 * i + 1
                is_odd_prime[(p * p) // 2::p] = False
        odd = 2 * np.flatnonzero(is_odd_prime).astype(np.int64) + 1
        primes = np.concatenate((np.array([2], dtype=np.int64), odd))
    primes.setflags(write=False)
    return primes


def mobius_block(lo, hi, *, max_length=None):
    """
    Sieves mu over the closed range [lo, hi].

    Entry j of the result is mu(lo + j). Only primes up to sqrt(hi) are used;
    a leftover cofactor after dividing out the small primes is a single large
    prime.

    Args:
        lo: First integer of the range, >= 1
        hi: Last integer of the range, >= lo
        max_length: Longest allowed range (defaults to the configured block size)

    Returns:
        int8 numpy array of length hi - lo + 1
    """
    lo = _positive_int(lo, "lo")
    hi = _positive_int(hi, "hi")
    if lo > hi:
        raise SieveError(f"empty range: lo={lo} > hi={hi}")
    length = hi - lo + 1
    cap = default_block_size() if max_length is None else max_length
    if length > cap:
        raise SieveError(f"block length {length} exceeds the limit {cap}")
    if hi > INT64_MAX:
        raise SieveError(f"hi exceeds the signed 64-bit range: {hi}")

    mu = np.ones(length, dtype=np.int8)
    radical = np.ones(length, dtype=np.int64)
    for p in sieving_primes(math.isqrt(hi)).tolist():
        start = (-lo) % p
        mu[start::p] = -mu[start::p]
        radical[start::p] *= p
        square = p * p
        mu[(-lo) % square::square] = 0

    values = np.arange(lo, hi + 1, dtype=np.int64)
    large = radical != values
    mu[large] = -mu[large]
    return mu


@dataclass(frozen=True, eq=False)
class MertensTable:
    """
    Checkpointed exact values of M(n).

    Attributes:
        limit: Largest n the table was built for
        stride: Checkpoint interval; entry i holds M(stride * (i + 1))
        checkpoints: int64 array of length limit // stride
        block_size: Sieve segment length used at build time
    """

    limit: int
    stride: int
    checkpoints: np.ndarray
    block_size: int

    def __post_init__(self):
        limit = _positive_int(self.limit, "limit")
        stride = _positive_int(self.stride, "stride")
        block_size = _positive_int(self.block_size, "block_size")
        if stride > limit:
            raise SieveError(f"stride {stride} exceeds limit {limit}")
        checkpoints = np.array(self.checkpoints, dtype=np.int64)
        if checkpoints.ndim != 1 or len(checkpoints) != limit // stride:
            raise SieveError(
                f"expected {limit // stride} checkpoints, got {checkpoints.size}"
            )
        checkpoints.setflags(write=False)
        object.__setattr__(self, "limit", limit)
        object.__setattr__(self, "stride", stride)
        object.__setattr__(self, "block_size", block_size)
        object.__setattr__(self, "checkpoints", checkpoints)

    # block_size is build metadata and not part of the table's identity
    def __eq__(self, other):
        if not isinstance(other, MertensTable):
            return NotImplemented
        return (
            self.limit == other.limit
            and self.stride == other.stride
            and np.array_equal(self.checkpoints, other.checkpoints)
        )

    __hash__ = None

    @property
    def count(self):
        return len(self.checkpoints)

    @property
    def max_resolvable(self):
        """Largest integer m whose M(m) the table can resolve."""
        return self.limit + self.stride - 1


def _scan_block(lo, hi, stride):
    """Block total plus block-local prefix sums at the checkpoints inside [lo, hi]."""
    mu = mobius_block(lo, hi, max_length=hi - lo + 1)
    prefix = np.cumsum(mu, dtype=np.int64)
    first = -(-lo // stride) * stride
    positions = np.arange(first, hi + 1, stride, dtype=np.int64) - lo
    return int(prefix[-1]), prefix[positions]


def mertens_scan(limit, stride=None, block_size=None, workers=None):
    """
    Builds a MertensTable up to limit.

    Block sums may run in worker processes; the prefix fold over the blocks is
    always done in index order, so the checkpoints do not depend on block_size
    or workers.

    Args:
        limit: Largest n covered
        stride: Checkpoint interval (defaults to the configured stride)
        block_size: Sieve segment length (defaults to the configured block size)
        workers: Worker processes for block sums (defaults to configuration)

    Returns:
        MertensTable
    """
    limit = _positive_int(limit, "limit")
    stride = _positive_int(min(default_stride(), limit) if stride is None else stride, "stride")
    block_size = _positive_int(
        default_block_size() if block_size is None else block_size, "block_size"
    )
    workers = _positive_int(default_workers() if workers is None else workers, "workers")
    if stride > limit:
        raise SieveError(f"stride {stride} exceeds limit {limit}")
    # |M(n)| <= n, so the limit bounds every checkpoint
    if limit > INT64_MAX:
        raise MertensOverflowError(f"M(n) up to {limit} may not fit signed 64-bit checkpoints")

    covered = (limit // stride) * stride
    ranges = [(lo, min(lo + block_size - 1, covered)) for lo in range(1, covered + 1, block_size)]
    logger.info(
        f"Scanning M(n) to {limit} (stride {stride}, {len(ranges)} blocks, {workers} workers)"
    )

    los = [lo for lo, _ in ranges]
    his = [hi for _, hi in ranges]
    strides = [stride] * len(ranges)
    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_scan_block, los, his, strides))
    else:
        results = list(map(_scan_block, los, his, strides))

    running = 0
    parts = []
    for total, local in results:
        parts.append(local + running)
        running += total
        logger.debug(f"Folded block, running M = {running}")
    checkpoints = np.concatenate(parts) if parts else np.array([], dtype=np.int64)

    logger.info(f"Scan finished: M({covered}) = {running}")
    return MertensTable(limit=limit, stride=stride, checkpoints=checkpoints, block_size=block_size)


def _mobius_sum(lo, hi, block_size):
    total = 0
    for start in range(lo, hi + 1, block_size):
        stop = min(start + block_size - 1, hi)
        total += int(mobius_block(start, stop, max_length=block_size).sum(dtype=np.int64))
    return total


def _table_block(table):
    return min(table.block_size, default_block_size())


def _prefix_at(table, m):
    """Integer-form M(m) for 0 <= m <= table.max_resolvable."""
    if m == 0:
        return 0
    i = min(m // table.stride, table.count)
    base = int(table.checkpoints[i - 1]) if i else 0
    start = i * table.stride + 1
    if start > m:
        return base
    return base + _mobius_sum(start, m, _table_block(table))


def mertens_range(table, lo, hi):
    """
    Integer-form M(n) for every n in [lo, hi].

    Args:
        table: MertensTable covering hi
        lo: First n, >= 1
        hi: Last n

    Returns:
        int64 numpy array, entry j = M(lo + j)
    """
    lo = _positive_int(lo, "lo")
    hi = _positive_int(hi, "hi")
    if lo > hi:
        raise SieveError(f"empty range: lo={lo} > hi={hi}")
    if hi > table.max_resolvable:
        raise TableRangeError(f"n={hi} is beyond the table (max {table.max_resolvable})")
    block = _table_block(table)
    out = np.empty(hi - lo + 1, dtype=np.int64)
    running = _prefix_at(table, lo - 1)
    for start in range(lo, hi + 1, block):
        stop = min(start + block - 1, hi)
        prefix = np.cumsum(mobius_block(start, stop, max_length=block), dtype=np.int64) + running
        out[start - lo:stop - lo + 1] = prefix
        running = int(prefix[-1])
    return out


def mertens_at(table, x):
    """
    M(x) as the sum of mu(k) over 1 <= k < x (strict, so an integer x excludes mu(x)).

    Args:
        table: MertensTable
        x: Real number >= 1

    Returns:
        int
    """
    x = float(x) if not isinstance(x, int) else x
    if not x >= 1:
        raise SieveError(f"x must be >= 1, got {x}")
    if x > table.limit + table.stride:
        raise TableRangeError(
            f"x={x} is beyond the table limit {table.limit} + stride {table.stride}"
        )
    return _prefix_at(table, math.ceil(x) - 1)

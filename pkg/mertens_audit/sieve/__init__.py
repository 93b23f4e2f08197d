"""
Sieve module for Mertens Audit
Exact Mobius/Mertens values and checkpoint table persistence
"""

from .sieve_core import (
    MertensTable,
    mertens_at,
    mertens_range,
    mertens_scan,
    mobius_block,
    mobius_naive,
    omega,
    sieving_primes,
)
from .table_store import MAGIC, checkpoint_checksum, load_table, save_table

__all__ = [
    'MertensTable',
    'mertens_at',
    'mertens_range',
    'mertens_scan',
    'mobius_block',
    'mobius_naive',
    'omega',
    'sieving_primes',
    'MAGIC',
    'checkpoint_checksum',
    'load_table',
    'save_table',
]

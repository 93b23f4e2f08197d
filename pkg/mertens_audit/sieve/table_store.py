#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Checkpoint table storage
Little-endian binary format: magic "MERTBLv1", u64 limit, u64 stride, u64 count,
count x i64 checkpoints, u64 trailer (checkpoint sum modulo 2^64)
"""

import struct
from pathlib import Path

import numpy as np

from ..config import default_block_size, get_logger
from ..errors import TableChecksumError, TableFileError, TableMagicError, TableTruncatedError
from .sieve_core import MertensTable

logger = get_logger("mertens_audit.table_store")

MAGIC = b"MERTBLv1"
_HEADER = struct.Struct("<8sQQQ")
_TRAILER = struct.Struct("<Q")


def checkpoint_checksum(checkpoints):
    """Sum of the checkpoint values modulo 2^64."""
    values = np.asarray(checkpoints, dtype=np.int64).view(np.uint64)
    return int(values.sum(dtype=np.uint64))


def save_table(table, path):
    """
    Writes a MertensTable to path.

    Args:
        table: MertensTable to store
        path: Destination file path
    """
    path = Path(path)
    payload = b"".join((
        _HEADER.pack(MAGIC, table.limit, table.stride, table.count),
        table.checkpoints.astype("<i8").tobytes(),
        _TRAILER.pack(checkpoint_checksum(table.checkpoints)),
    ))
    path.write_bytes(payload)
    logger.info(f"Table written to {path} ({table.count} checkpoints, {len(payload)} bytes)")


def load_table(path, block_size=None):
    """
    Reads a MertensTable from path.

    The file does not record the build block size; the loaded table gets
    block_size (or the configured default).

    Args:
        path: Source file path
        block_size: Block size to attach to the loaded table

    Returns:
        MertensTable
    """
    path = Path(path)
    data = path.read_bytes()
    if len(data) < len(MAGIC):
        raise TableTruncatedError(f"{path}: file too short for the magic ({len(data)} bytes)")
    if data[:len(MAGIC)] != MAGIC:
        raise TableMagicError(f"{path}: bad magic {data[:len(MAGIC)]!r}")
    if len(data) < _HEADER.size:
        raise TableTruncatedError(f"{path}: header truncated")

    _, limit, stride, count = _HEADER.unpack_from(data)
    expected = _HEADER.size + 8 * count + _TRAILER.size
    if len(data) < expected:
        raise TableTruncatedError(f"{path}: expected {expected} bytes, found {len(data)}")
    if len(data) > expected:
        raise TableFileError(f"{path}: {len(data) - expected} unexpected trailing bytes")
    if stride == 0 or limit < stride or count != limit // stride:
        raise TableFileError(f"{path}: inconsistent header (limit={limit}, stride={stride}, count={count})")

    checkpoints = np.frombuffer(data, dtype="<i8", count=count, offset=_HEADER.size).astype(np.int64)
    (trailer,) = _TRAILER.unpack_from(data, _HEADER.size + 8 * count)
    if trailer != checkpoint_checksum(checkpoints):
        raise TableChecksumError(f"{path}: checksum mismatch")

    logger.info(f"Table loaded from {path} (limit {limit}, stride {stride})")
    return MertensTable(
        limit=limit,
        stride=stride,
        checkpoints=checkpoints,
        block_size=default_block_size() if block_size is None else block_size,
    )

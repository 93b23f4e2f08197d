#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Configuration
Default settings, overridable through environment variables
"""

import os
import logging

from .errors import ConfigError

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def _env_float(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{name} must be a number, got {raw!r}")
    if not value > 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def default_block_size():
    """Sieve segment length (and mobius_block length cap)."""
    return _env_int("MERTENS_BLOCK_SIZE", 1 << 22)


def default_stride():
    """Checkpoint interval of a MertensTable."""
    return _env_int("MERTENS_STRIDE", 1 << 16)


def default_workers():
    """Worker processes used for block sums."""
    return _env_int("MERTENS_WORKERS", 1)


def default_tolerance():
    """Absolute tolerance for principal-value quadrature."""
    return _env_float("MERTENS_TOLERANCE", 1e-8)


def log_level():
    level = os.environ.get("MERTENS_LOG_LEVEL", "INFO").upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"MERTENS_LOG_LEVEL must be a logging level name, got {level!r}")
    return level


def get_logger(name):
    """
    Returns a named logger writing to stderr in the project log format.

    Args:
        name: Logger name, e.g. "mertens_audit.sieve"

    Returns:
        logging.Logger with a single StreamHandler attached
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
        logger.setLevel(log_level())
        logger.propagate = False
    return logger

"""
Harness module for Mertens Audit
Command-line entry point and report writers
"""

from .cli import RunConfig, build_parser, main, parse_args, run
from .reports import (
    checks_frame,
    summarize,
    sweep_frame,
    sweep_summary,
    write_checks_csv,
    write_summary,
    write_sweep_csv,
)

__all__ = [
    'RunConfig',
    'build_parser',
    'main',
    'parse_args',
    'run',
    'checks_frame',
    'summarize',
    'sweep_frame',
    'sweep_summary',
    'write_checks_csv',
    'write_summary',
    'write_sweep_csv',
]

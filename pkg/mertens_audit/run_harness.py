#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Mertens Audit - Harness Runner
This script runs one audit command, e.g. `python -m mertens_audit.run_harness pv-check`.
"""

import sys

from mertens_audit.harness import main

if __name__ == '__main__':
    sys.exit(main())

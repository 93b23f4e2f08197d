"""
Mertens Audit
Exact Mertens function tables and numerical audits of an inverse-Hilbert
estimate of |M(x)|
"""

__version__ = "0.1.0"

"""
Quadrature module for Mertens Audit
Principal-value integrals and the semiaxis Hilbert transform pair
"""

from .pv_quadrature import (
    PVSpec,
    QuadratureResult,
    forward_hilbert_step,
    forward_hilbert_sum,
    forward_hilbert_trace,
    forward_hilbert_weights,
    hilbert_pair_roundtrip,
    inverse_hilbert_estimate,
    inverse_semiaxis_hilbert,
    pv_closed_form,
    pv_integral,
    semiaxis_hilbert,
)

__all__ = [
    'PVSpec',
    'QuadratureResult',
    'forward_hilbert_step',
    'forward_hilbert_sum',
    'forward_hilbert_trace',
    'forward_hilbert_weights',
    'hilbert_pair_roundtrip',
    'inverse_hilbert_estimate',
    'inverse_semiaxis_hilbert',
    'pv_closed_form',
    'pv_integral',
    'semiaxis_hilbert',
]

"""
Analysis module for Mertens Audit
Bounds, the inversion-chain checks and their test-function catalogs
"""

from .bounds_estimator import (
    BOUND_CATALOG,
    BoundEvaluation,
    BoundSpec,
    EpsilonChoice,
    EstimateRecord,
    bound_spec,
    classical_bounds,
    epsilon_for,
    estimate,
    estimate_alpha,
    integral_epsilon,
    inverse_target,
    probabilistic_bound,
    satisfied_fraction,
    sweep_report,
    x_from_theta,
)
from .catalog import (
    HILBERT_PAIR_CATALOG,
    PARAMETRIC_PAIR_CATALOG,
    DecayingTestFunction,
    MonotoneTestFunction,
    monotone_catalog,
    shifted_inverse,
)
from .check_report import CheckReport, gated_report, report_only
from .inversion_checks import (
    Theorem1Result,
    dn_identity_check,
    harmonic_shift_sum,
    mobius_inverse_trace,
    mobius_partial_inverse,
    parametric_pair_check,
    prop1_residual,
    theorem1_constant,
    theorem1_report,
    theorem1_residual,
    theta_sweep_check,
    verify_test_function,
)
from .special import compensated_sum, cot_pi, digamma

__all__ = [
    'BOUND_CATALOG',
    'BoundEvaluation',
    'BoundSpec',
    'EpsilonChoice',
    'EstimateRecord',
    'bound_spec',
    'classical_bounds',
    'epsilon_for',
    'estimate',
    'estimate_alpha',
    'integral_epsilon',
    'inverse_target',
    'probabilistic_bound',
    'satisfied_fraction',
    'sweep_report',
    'x_from_theta',
    'HILBERT_PAIR_CATALOG',
    'PARAMETRIC_PAIR_CATALOG',
    'DecayingTestFunction',
    'MonotoneTestFunction',
    'monotone_catalog',
    'shifted_inverse',
    'CheckReport',
    'gated_report',
    'report_only',
    'Theorem1Result',
    'dn_identity_check',
    'harmonic_shift_sum',
    'mobius_inverse_trace',
    'mobius_partial_inverse',
    'parametric_pair_check',
    'prop1_residual',
    'theorem1_constant',
    'theorem1_report',
    'theorem1_residual',
    'theta_sweep_check',
    'verify_test_function',
    'compensated_sum',
    'cot_pi',
    'digamma',
]

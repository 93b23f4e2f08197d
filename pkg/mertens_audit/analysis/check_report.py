"""
Mertens Audit - Check report record
One audit outcome; a report is pass-gated exactly when it carries a bound
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..errors import ContractViolation


@dataclass(frozen=True)
class CheckReport:
    """
    Attributes:
        check_id: Family-qualified identifier, e.g. "theorem1.inverse_t"
        inputs: Named real/integer inputs (and derived quantities worth keeping)
        residual: Measured residual
        bound: Threshold for gated checks, None for report-only checks
        passed: Gate outcome, present iff bound is present
        notes: Free-text remarks (inconclusive certificates, conventions)
    """

    check_id: str
    inputs: Mapping[str, object]
    residual: float
    bound: Optional[float] = None
    passed: Optional[bool] = None
    notes: str = field(default="", compare=False)

    def __post_init__(self):
        if (self.bound is None) != (self.passed is None):
            raise ContractViolation(f"{self.check_id}: pass must be present exactly when a bound is")

    @property
    def gated(self):
        return self.bound is not None

    @property
    def family(self):
        return self.check_id.split(".", 1)[0]


def gated_report(check_id, inputs, residual, bound, notes="", slack=0.0):
    """A pass-gated report; passes when |residual| <= bound + slack (NaN never passes)."""
    passed = bool(abs(residual) <= bound + slack)
    return CheckReport(check_id, dict(inputs), float(residual), float(bound), passed, notes)


def report_only(check_id, inputs, residual, notes=""):
    return CheckReport(check_id, dict(inputs), float(residual), None, None, notes)

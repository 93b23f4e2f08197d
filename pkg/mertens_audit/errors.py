"""
Mertens Audit - Exception hierarchy
Every error raised by the library derives from MertensAuditError; the CLI maps
them to exit codes.
"""


class MertensAuditError(Exception):
    """Base class for all library errors."""


class ConfigError(MertensAuditError, ValueError):
    """Invalid environment or command-line configuration value."""


# Sieve and tables

class SieveError(MertensAuditError, ValueError):
    """Invalid argument to a sieve operation."""


class MertensOverflowError(SieveError, OverflowError):
    """A Mertens value could leave the signed 64-bit checkpoint range."""


class TableRangeError(SieveError, IndexError):
    """Requested point is not resolvable from the table."""


class TableFileError(MertensAuditError, OSError):
    """Checkpoint file could not be decoded."""


class TableMagicError(TableFileError):
    """File does not start with the expected magic bytes."""


class TableTruncatedError(TableFileError):
    """File ends before the declared payload."""


class TableChecksumError(TableFileError):
    """Trailer does not match the checkpoint sum."""


# Estimator

class EstimatorError(MertensAuditError, ValueError):
    """Invalid estimator parameter."""


class EpsilonDegenerate(EstimatorError):
    """2x is already an integer, so no epsilon in (0, 1) exists."""


class ParameterRangeError(EstimatorError):
    """Parameter outside its open interval."""


# Quadrature

class QuadratureError(MertensAuditError, ArithmeticError):
    """Principal-value quadrature problem."""


class ConvergenceFailure(QuadratureError):
    """Requested tolerance was not reached within the evaluation budget."""

    def __init__(self, message, best_value, est_error):
        super().__init__(message)
        self.best_value = best_value
        self.est_error = est_error


# Checks

class ContractViolation(MertensAuditError, ValueError):
    """A hypothesis of an audited statement does not hold for the input."""


class DigammaPoleError(MertensAuditError, ValueError):
    """Digamma requested at a non-positive integer."""


class PVSpecError(QuadratureError, ValueError):
    """Principal-value integral instance outside its admissible parameters."""

"""Exception hierarchy shared by every module of the package."""


class EcrepError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""


class PrecisionTooLow(EcrepError):
    pass


class InvalidModulus(EcrepError):
    pass


class DomainError(EcrepError, ValueError):
    pass


class UnsupportedArgument(EcrepError, ValueError):
    pass


class TruncationFailure(EcrepError):
    """A series did not reach its tail bound within the allowed number of terms."""


class SingularCurve(EcrepError):
    pass


class PrecisionExceeded(EcrepError):
    """The analytic value is too far from an integer to be rounded safely."""


class AdmissibilityError(EcrepError):
    pass


class BranchError(EcrepError):
    pass


class BudgetExceeded(EcrepError):
    pass


class InvariantViolation(EcrepError):
    """Raised when a mathematical theorem appears to fail; indicates a bug."""

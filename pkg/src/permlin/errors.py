"""Exception hierarchy shared across the package."""


class PermlinError(Exception):
    """Base class for all package errors."""


class ParameterError(PermlinError, ValueError):
    """An argument violates a documented precondition or invariant."""


class DomainError(PermlinError, ValueError):
    """Input is outside the mathematical domain of the operation
    (e.g. a covariance that is not positive definite)."""


class NumericalError(PermlinError, RuntimeError):
    """An iterative numerical routine failed to converge within its cap."""


class FactorialGuardError(ParameterError):
    """Refusal to enumerate n! hypotheses beyond the configured limit."""


class NotLinearRegimeError(DomainError):
    """The operation's premise requires a linear-regime covariance."""

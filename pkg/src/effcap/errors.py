"""Exception types shared across the package."""


class EffcapError(Exception):
    """Base class for all package errors."""


class DomainError(EffcapError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ParameterError(EffcapError, ValueError):
    """A model or configuration parameter violates its bounds."""


class NumericError(EffcapError, ArithmeticError):
    """A numerical routine failed to reach its accuracy target.

    ``best_estimate`` carries the last (unconverged) value when one exists,
    so callers can decide whether to degrade gracefully.
    """

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class UnsupportedModelError(EffcapError, ValueError):
    """The requested operation has no implementation for this model."""


class MethodUnavailableError(EffcapError, ValueError):
    """The requested evaluation route does not apply; use the alternative."""

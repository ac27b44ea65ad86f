"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside an operation's domain.

    ``value`` and ``error_estimate`` carry a best-effort result when one exists.
    """

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class NumericError(ArithmeticError):
    """A numerical procedure broke down (zero pivot, no convergence, ...)."""


class FormatError(ValueError):
    """A persisted file failed to parse or validate."""


class GridBuildError(RuntimeError):
    """Some grid nodes could not be filled to the requested precision."""

    def __init__(self, message, nodes=()):
        super().__init__(message)
        self.nodes = list(nodes)


class TargetUnreachable(ValueError):
    """The requested accuracy cannot be reached with the data at hand."""

"""Exception types shared across the package."""


class CantorPlaneError(Exception):
    """Base class for errors raised by this package."""


class DomainError(CantorPlaneError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class UnsupportedRegionError(CantorPlaneError, ValueError):
    """A region or region pair falls outside the supported algebra."""


class InvalidSchemeError(CantorPlaneError, ValueError):
    """A ball scheme violates a structural precondition."""


class ConfigError(CantorPlaneError, ValueError):
    """A run configuration failed validation."""


class BudgetExhausted(CantorPlaneError, RuntimeError):
    """A bounded search ran out of steps before finding a witness.

    This signals that the configured budget was too small for the geometry
    at hand, not that the sought object fails to exist.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial

"""Exception types shared across the package."""


class QfientError(Exception):
    """Base class for package-specific errors."""


class ValidationError(QfientError, ValueError):
    """Input violates a structural invariant (hermiticity, trace, norm, shape, domain)."""


class NotPsdError(ValidationError):
    """Matrix has an eigenvalue below the positive-semidefinite tolerance."""


class CapacityError(QfientError, ValueError):
    """Requested register dimension exceeds the configured dense cap."""


class ConsistencyError(QfientError, RuntimeError):
    """A mathematically guaranteed relation failed numerically."""

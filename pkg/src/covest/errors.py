"""Exception types shared across the package."""


class CovestError(ValueError):
    """Base class for all covest errors."""


class InvalidInputError(CovestError):
    """Input violates a precondition (non-finite entries, dimension mismatch, ...)."""


class DegenerateInputError(CovestError):
    """Input is numerically rank-deficient or otherwise degenerate."""


class UnsupportedDimensionError(CovestError):
    """Requested dimensions fall outside the supported range."""


class ConfigError(CovestError):
    """Experiment configuration is invalid. Maps to CLI exit code 2."""


class CheckFailedError(CovestError):
    """A built-in consistency check failed at runtime. Maps to CLI exit code 3."""

"""Exception types shared across the package.

Each class maps to a distinct CLI exit code (see cli.EXIT_CODES), so
callers can tell configuration mistakes from geometry mismatches and
solver failures.
"""


class PatchTomoError(Exception):
    """Base class for all package errors."""


class DimensionError(PatchTomoError):
    """Incompatible shapes, non-divisible image/patch sizes, or an
    unsupported scan geometry."""


class ConfigError(PatchTomoError):
    """Invalid or unknown configuration values."""


class ConsistencyError(PatchTomoError):
    """Input artifacts do not belong together (content-hash mismatch)."""


class DivergedError(PatchTomoError):
    """An iterative solver produced a non-finite objective."""


class InsufficientDataError(PatchTomoError):
    """Too few training patches for the requested dictionary size."""

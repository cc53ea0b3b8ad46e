"""Exception types shared across the package."""


class MuniformError(Exception):
    """Base class for package errors."""


class DimensionMismatch(MuniformError, ValueError):
    """Operands act on different qubit counts."""


class InvalidInput(MuniformError, ValueError):
    """Malformed value, string, or configuration."""


class InconsistentGroup(MuniformError, ValueError):
    """Generator set is anticommuting or generates -I."""


class UnphysicalNoise(MuniformError, ValueError):
    """Noise parameters violate T2 <= 2*T1 or a probability bound."""


class ResourceCapExceeded(MuniformError, RuntimeError):
    """Requested computation exceeds a configured size cap."""

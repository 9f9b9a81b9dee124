"""Exception types shared across the package."""


class EtsSelectError(Exception):
    """Base class for all package errors."""


class DataError(EtsSelectError):
    """Input data violates a precondition."""


class ConfigError(EtsSelectError):
    """Invalid configuration or plan."""


class SeriesTooShort(DataError):
    """Series shorter than the operation's minimum length."""


class TooShort(DataError):
    """Series too short to estimate the requested model (length < n_params + 4)."""


class NonPositiveData(DataError):
    """Multiplicative component requested on a series with values <= 0."""


class NoFeasibleModel(DataError):
    """Every candidate model was skipped by the feasibility filters."""


class ZeroDenominator(DataError):
    """Scaled metric denominator is zero (constant in-sample history)."""


class DegenerateDifferential(DataError):
    """Loss differential has no variance; the test statistic is undefined."""


class DegenerateData(DataError):
    """Training matrix contains non-finite values."""


class DimensionMismatch(DataError):
    """Input vector length does not match the trained feature count."""


class ManifestMismatch(DataError):
    """Feature manifest version differs between model and extractor."""


class VersionMismatch(EtsSelectError):
    """Serialized artifact uses an unsupported format version."""


class CorruptArtifact(EtsSelectError):
    """Serialized artifact failed checksum or structural validation."""

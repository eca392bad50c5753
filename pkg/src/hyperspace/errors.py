"""Exception types shared across the package."""


class HyperspaceError(Exception):
    """Base class for all hyperspace errors."""


class DimMismatch(HyperspaceError):
    """Operands have different dimensionalities."""


class BackendMismatch(HyperspaceError):
    """Operands belong to different VSA backends."""


class InvalidScalar(HyperspaceError):
    """A scalar argument is NaN or infinite."""


class NonFinite(HyperspaceError):
    """A vector or coordinate contains NaN or infinite entries."""


class ZeroVector(HyperspaceError):
    """An operation that requires a nonzero vector received a (near-)zero one."""


class EmptyMemory(HyperspaceError):
    """A query was issued against a memory with no stored pairs."""


class DegenerateSpline(HyperspaceError):
    """Spline control points are coincident; no path can be fit."""


class TrainingDiverged(HyperspaceError):
    """MLP training produced a non-finite loss."""


class Untrained(HyperspaceError):
    """A decoder was used before being trained."""


class ConfigError(HyperspaceError):
    """A run-configuration file contains unknown or invalid keys."""


class StageError(HyperspaceError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"pipeline stage '{stage}' failed: {cause!r}")
        self.stage = stage
        self.cause = cause


class ValueClampWarning(UserWarning):
    """A value outside the configured range was clamped before encoding."""

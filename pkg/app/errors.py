"""
Exception hierarchy for the elastography pipeline.

Every error carries the CLI exit code it maps to, so the command layer can
translate failures without knowing which module raised them.
"""


class ElastoError(Exception):
    """Base class for pipeline errors."""

    exit_code: int = 2


class InvalidParameterError(ElastoError, ValueError):
    """A caller-supplied argument is out of range."""

    exit_code = 1


class DataFormatError(ElastoError, ValueError):
    """Input data does not conform to its file format or contract."""

    exit_code = 2


class FrameFormatError(DataFormatError):
    pass


class ModelFormatError(DataFormatError):
    pass


class ModelChecksumError(ModelFormatError):
    pass


class UnsupportedModelVersionError(ModelFormatError):
    pass


class MissingFramesError(DataFormatError):
    """One or more frame files referenced by a manifest could not be loaded."""

    def __init__(self, message: str, missing: list[str] | None = None):
        super().__init__(message)
        self.missing = missing or []


class ZeroVarianceError(ElastoError, ValueError):
    """A frame or window is constant where a standard deviation is required."""

    exit_code = 2


class PreconditionError(ElastoError):
    """Inputs are well-formed but do not satisfy an operation's precondition."""

    exit_code = 3


class SingleClassDatasetError(PreconditionError):
    def __init__(self, message: str = "single-class dataset"):
        super().__init__(message)


class TrainingError(ElastoError):
    """Training produced no usable weights."""

    exit_code = 2

"""VoxFuse Custom Errors(Exception) definition modules"""
from enum import Enum
from typing import Dict


class VoxFuseError(Exception):
    """Base class for other exceptions."""

    code = "VOXFUSE_INTERNAL_ERROR"


class VoxFuseDetailedError(VoxFuseError):
    """Base class for exceptions carrying structured details."""

    def __init__(self, *args, details: dict = None):
        self.details = details
        super().__init__(*args)


class ValidationError(VoxFuseError):
    """Raised when a value breaks one of its type invariants."""

    code = "VOXFUSE_VALIDATING_ERROR"


class MethodNotSupportedError(VoxFuseError):
    """Raised when a method from a base type is not implemented."""

    code = "VOXFUSE_NON_SUPPORTED_ERROR"

    def __init__(self, method: str, base: str):
        super().__init__(f"{method} not supported by {base}")


class FieldErrorCode(Enum):
    required = dict(code="required", message="This field is required")
    invalid = dict(code="invalid", message="This field is invalid")


class FieldError(VoxFuseDetailedError):
    """Raised when one or many settings fields are missing or invalid."""

    code = "VOXFUSE_FIELD_ERROR"

    def __init__(self, fields: Dict[str, FieldErrorCode]):
        super().__init__(
            "Invalid settings",
            details={name: code.value for name, code in fields.items()},
        )


class GeometryError(ValidationError):
    """Raised for degenerate camera geometry (behind camera, singular K...)."""

    code = "VOXFUSE_GEOMETRY_ERROR"


class ShapeMismatchError(ValidationError):
    """Raised when resolutions, grid specs or channel counts disagree."""

    code = "VOXFUSE_SHAPE_MISMATCH_ERROR"

    def __init__(self, what: str, expected, received):
        super().__init__(f"{what} mismatch: expected {expected}, received {received}")


class DataError(VoxFuseDetailedError):
    """Raised when input data is missing, corrupted or insufficient."""

    code = "VOXFUSE_DATA_ERROR"


class NotEnoughFramesError(DataError):
    """Raised when a sequence is too short for the neighbor window."""

    code = "VOXFUSE_NOT_ENOUGH_FRAMES_ERROR"

    def __init__(self, count: int, required: int):
        super().__init__(
            f"{count} frame(s) available, at least {required} required",
            details=dict(count=count, required=required),
        )

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union
import numpy as np

Scalar = Union[float, np.ndarray]


class PoseConvention(Enum):
    camera_from_world = "camera_from_world"
    world_from_camera = "world_from_camera"


class CostVolumeKind(Enum):
    initial = "initial"
    aggregated_depth = "aggregated_depth"
    overlap = "overlap"


class OverlapLabel(Enum):
    """Ground-truth overlap labels and their 8-bit PNG encoding."""

    non_overlap = 0
    overlap = 255
    unknown = 128


class RotationMethod(Enum):
    discrete = "discrete"
    interp = "interp"
    none = "none"


class RelativeDenominator(Enum):
    predicted = "predicted"
    ground_truth = "ground_truth"


class PointDistance(Enum):
    """Point to point distance, valued by its Minkowski exponent."""

    l1 = 1
    l2 = 2


class PrimitiveType(Enum):
    plane = "plane"
    box = "box"
    sphere = "sphere"


class DistanceUnit(Enum):
    M = "M"
    MM = "MM"


class Distance:
    def __init__(self, value: Scalar, unit: DistanceUnit = DistanceUnit.M):
        self._value = value
        self._unit = unit

    @property
    def value(self):
        return self.__getattribute__(str(self._unit.name))

    @property
    def M(self):
        if self._value is None:
            return None
        if self._unit == DistanceUnit.M:
            return self._value
        return self._value / 1000.0

    @property
    def MM(self):
        if self._value is None:
            return None
        if self._unit == DistanceUnit.MM:
            return self._value
        return self._value * 1000.0


@dataclass(frozen=True)
class GridPreset:
    dims: Tuple[int, int, int]
    pitch: float = 0.04


class GridPresets(Enum):
    training = GridPreset(dims=(160, 64, 160))
    compact = GridPreset(dims=(160, 160, 48))
    testing = GridPreset(dims=(416, 128, 416))

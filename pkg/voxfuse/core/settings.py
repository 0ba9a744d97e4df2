"""VoxFuse Settings definition"""

import json
import attr
from jstruct import JStruct
from voxfuse.core.models import SweepConfig, VoxelGridSpec, LossWeights
from voxfuse.core.units import (
    GridPresets,
    RotationMethod,
    RelativeDenominator,
    PointDistance,
)
from voxfuse.core.errors import FieldError, FieldErrorCode

NEIGHBOR_WINDOW = 3


@attr.s(auto_attribs=True)
class Settings:
    """
    Unified reconstruction settings (pipeline configuration)
    """

    sweep: SweepConfig = JStruct[SweepConfig]
    grid: VoxelGridSpec = JStruct[VoxelGridSpec]
    loss_weights: LossWeights = JStruct[LossWeights]
    grid_preset: str = None

    mask_threshold: float = 0.5
    use_mask: bool = True
    use_occupancy: bool = True
    truncation: float = None
    kernel_size: int = 3
    channels: int = 32
    neighbor_window: int = NEIGHBOR_WINDOW
    extractor: str = "sobel"
    aggregator: str = "variance"
    sharpness: float = 50.0

    image_height: int = 480
    image_width: int = 640
    downsample: int = 4

    kernel_seed: int = 0
    kernel_path: str = None
    rotation_method: str = RotationMethod.discrete.value
    overlap_tolerance: float = 0.05

    relative_denominator: str = RelativeDenominator.predicted.value
    point_distance: str = PointDistance.l1.name
    f_threshold: float = 0.05
    workers: int = 1

    def __attrs_post_init__(self):
        self.sweep = self.sweep or SweepConfig()
        self.loss_weights = self.loss_weights or LossWeights()
        self.grid = self.grid or VoxelGridSpec(origin=(-3.2, -1.28, 0.0))
        if self.grid_preset is not None and self.grid_preset in GridPresets.__members__:
            preset = GridPresets[self.grid_preset].value
            self.grid = VoxelGridSpec(
                origin=self.grid.origin, pitch=preset.pitch, dims=preset.dims
            )
        self.validate()

    def validate(self):
        errors = {}
        checks = {
            "mask_threshold": 0.0 <= self.mask_threshold <= 1.0,
            "use_mask": isinstance(self.use_mask, bool),
            "use_occupancy": isinstance(self.use_occupancy, bool),
            "truncation": self.truncation is None or self.truncation > 0,
            "kernel_size": self.kernel_size >= 1 and self.kernel_size % 2 == 1,
            "channels": self.channels >= 1,
            "neighbor_window": self.neighbor_window == NEIGHBOR_WINDOW,
            "sharpness": self.sharpness > 0,
            "downsample": self.downsample >= 1,
            "image_height": self.image_height % max(self.downsample, 1) == 0,
            "image_width": self.image_width % max(self.downsample, 1) == 0,
            "rotation_method": self.rotation_method in RotationMethod._value2member_map_,
            "relative_denominator": (
                self.relative_denominator in RelativeDenominator._value2member_map_
            ),
            "point_distance": self.point_distance in PointDistance.__members__,
            "overlap_tolerance": self.overlap_tolerance > 0,
            "f_threshold": self.f_threshold > 0,
            "workers": self.workers >= 1,
            "grid_preset": (
                self.grid_preset is None or self.grid_preset in GridPresets.__members__
            ),
        }
        errors.update(
            {name: FieldErrorCode.invalid for name, valid in checks.items() if not valid}
        )

        if any(errors.items()):
            raise FieldError(errors)

    @property
    def tsdf_truncation(self) -> float:
        return self.truncation or 3.0 * self.grid.pitch

    @property
    def feature_shape(self):
        return self.image_height // self.downsample, self.image_width // self.downsample

    @property
    def rotation(self) -> RotationMethod:
        return RotationMethod(self.rotation_method)

    @property
    def denominator(self) -> RelativeDenominator:
        return RelativeDenominator(self.relative_denominator)

    @property
    def distance(self) -> PointDistance:
        return PointDistance[self.point_distance]

    @staticmethod
    def from_file(path: str, **overrides) -> "Settings":
        """Return settings built from CLI overrides, then the JSON file on top."""
        with open(path, "r") as f:
            content = json.load(f)
        return Settings(**{**overrides, **content})

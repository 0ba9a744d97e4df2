"""VoxFuse Unified datatypes module."""
import attr
import numpy as np
from typing import Dict, List, Tuple
from voxfuse.core.units import CostVolumeKind, PoseConvention, RotationMethod
from voxfuse.core.errors import GeometryError, ShapeMismatchError, ValidationError

ROTATION_TOLERANCE = 1e-9


def _matrix(value) -> np.ndarray:
    return np.asarray(value, dtype=float).reshape(3, 3)


def _vector(value) -> np.ndarray:
    return np.asarray(value, dtype=float).reshape(3)


def _triple(cast):
    return lambda value: tuple(cast(v) for v in value)


def check_rotation(R: np.ndarray, tolerance: float = ROTATION_TOLERANCE):
    if not np.allclose(R.T @ R, np.eye(3), rtol=0.0, atol=tolerance):
        raise GeometryError("rotation is not orthonormal")
    if abs(np.linalg.det(R) - 1.0) > tolerance:
        raise GeometryError("rotation determinant is not +1")


""" Camera and grid types """


@attr.s(auto_attribs=True, frozen=True)
class Intrinsics:
    """pinhole intrinsics, pixels."""

    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int

    def __attrs_post_init__(self):
        if not (self.fx > 0 and self.fy > 0):
            raise GeometryError("focal lengths must be positive")
        if not (0 <= self.cx < self.width and 0 <= self.cy < self.height):
            raise GeometryError("principal point outside the image")

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.fx, 0.0, self.cx], [0.0, self.fy, self.cy], [0.0, 0.0, 1.0]]
        )

    @property
    def inverse(self) -> np.ndarray:
        return np.array(
            [
                [1.0 / self.fx, 0.0, -self.cx / self.fx],
                [0.0, 1.0 / self.fy, -self.cy / self.fy],
                [0.0, 0.0, 1.0],
            ]
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    def scaled(self, factor: int) -> "Intrinsics":
        """intrinsics of the image average-pooled by `factor`."""
        return Intrinsics(
            fx=self.fx / factor,
            fy=self.fy / factor,
            cx=(self.cx + 0.5) / factor - 0.5,
            cy=(self.cy + 0.5) / factor - 0.5,
            width=self.width // factor,
            height=self.height // factor,
        )


@attr.s(auto_attribs=True, frozen=True, eq=False)
class Pose:
    """rigid transform with an explicit convention tag."""

    R: np.ndarray = attr.ib(converter=_matrix)
    t: np.ndarray = attr.ib(converter=_vector, factory=lambda: np.zeros(3))
    convention: PoseConvention = PoseConvention.camera_from_world

    def __attrs_post_init__(self):
        check_rotation(self.R)

    @staticmethod
    def identity(convention: PoseConvention = PoseConvention.camera_from_world) -> "Pose":
        return Pose(np.eye(3), np.zeros(3), convention)

    @staticmethod
    def from_matrix(
        matrix: np.ndarray,
        convention: PoseConvention = PoseConvention.camera_from_world,
    ) -> "Pose":
        matrix = np.asarray(matrix, dtype=float)
        return Pose(matrix[:3, :3], matrix[:3, 3], convention)

    @property
    def matrix(self) -> np.ndarray:
        matrix = np.eye(4)
        matrix[:3, :3] = self.R
        matrix[:3, 3] = self.t
        return matrix

    def inverse(self) -> "Pose":
        """the same transform read in the opposite direction."""
        flipped = (
            PoseConvention.world_from_camera
            if self.convention == PoseConvention.camera_from_world
            else PoseConvention.camera_from_world
        )
        return Pose(self.R.T, -self.R.T @ self.t, flipped)

    def compose(self, other: "Pose") -> "Pose":
        """self ∘ other: apply `other` first."""
        return Pose(self.R @ other.R, self.R @ other.t + self.t, self.convention)

    def camera_from_world(self) -> "Pose":
        if self.convention == PoseConvention.camera_from_world:
            return self
        return self.inverse()

    def world_from_camera(self) -> "Pose":
        if self.convention == PoseConvention.world_from_camera:
            return self
        return self.inverse()

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.R.T + self.t

    @property
    def center(self) -> np.ndarray:
        """camera center in world coordinates."""
        return self.world_from_camera().t


@attr.s(auto_attribs=True, frozen=True)
class Camera:
    intrinsics: Intrinsics
    pose: Pose

    def scaled(self, factor: int) -> "Camera":
        return Camera(self.intrinsics.scaled(factor), self.pose)


@attr.s(auto_attribs=True, frozen=True)
class VoxelGridSpec:
    """axis-aligned voxel grid; voxel (0, 0, 0) is centered on `origin`."""

    origin: Tuple[float, float, float] = attr.ib(
        converter=_triple(float), default=(0.0, 0.0, 0.0)
    )
    pitch: float = 0.04
    dims: Tuple[int, int, int] = attr.ib(converter=_triple(int), default=(160, 64, 160))

    def __attrs_post_init__(self):
        if not self.pitch > 0:
            raise ValidationError("voxel pitch must be positive")
        if len(self.dims) != 3 or any(d < 1 for d in self.dims):
            raise ValidationError("voxel dims must all be >= 1")

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.dims

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))


""" Stage one types """


@attr.s(auto_attribs=True, frozen=True)
class SweepConfig:
    planes: int = 48
    z_min: float = 0.5

    def __attrs_post_init__(self):
        if self.planes < 2:
            raise ValidationError("at least 2 depth planes are required")
        if not self.z_min > 0:
            raise ValidationError("z_min must be positive")

    @property
    def z_max(self) -> float:
        return self.z_min * self.planes


@attr.s(auto_attribs=True, frozen=True, eq=False)
class FeatureMap:
    data: np.ndarray

    def __attrs_post_init__(self):
        if self.data.ndim != 3:
            raise ValidationError("feature maps are C×H×W")
        if not np.all(np.isfinite(self.data)):
            raise ValidationError("feature maps must be finite")

    @property
    def channels(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape[1], self.data.shape[2]


@attr.s(auto_attribs=True, frozen=True, eq=False)
class CostVolume:
    """K×D×H×W grid over depth hypotheses.

    `coverage` holds the per-neighbor in-bounds masks (2×D×H×W) of an
    initial volume.
    """

    data: np.ndarray
    kind: CostVolumeKind
    coverage: np.ndarray = None

    def __attrs_post_init__(self):
        if self.data.ndim != 4:
            raise ValidationError("cost volumes are K×D×H×W")
        expected = {CostVolumeKind.aggregated_depth: 1, CostVolumeKind.overlap: 2}.get(self.kind)
        if expected is not None and self.data.shape[0] != expected:
            raise ShapeMismatchError(f"{self.kind.value} channels", expected, self.data.shape[0])

    @property
    def planes(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape[2], self.data.shape[3]


@attr.s(auto_attribs=True, frozen=True, eq=False)
class DepthMap:
    """metric depth (meters) with a validity bitmask."""

    data: np.ndarray
    valid: np.ndarray = None

    def __attrs_post_init__(self):
        if self.valid is None:
            object.__setattr__(
                self, "valid", np.isfinite(self.data) & (np.nan_to_num(self.data) > 0)
            )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def values(self) -> np.ndarray:
        """depths with invalid pixels set to NaN."""
        return np.where(self.valid, self.data, np.nan)


@attr.s(auto_attribs=True, frozen=True, eq=False)
class OverlapMask:
    """per-pixel overlap probability; `known` is False on unknown GT pixels."""

    data: np.ndarray
    known: np.ndarray = None

    def __attrs_post_init__(self):
        if self.known is None:
            object.__setattr__(self, "known", np.ones(self.data.shape, dtype=bool))
        if np.any(self.data < 0) or np.any(self.data > 1):
            raise ValidationError("overlap probabilities must lie in [0, 1]")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape


""" Posed convolution types """


@attr.s(auto_attribs=True, frozen=True, eq=False)
class ReservoirKernel:
    weights: np.ndarray

    def __attrs_post_init__(self):
        if self.weights.ndim != 5:
            raise ValidationError("kernels are C_out×C_in×w×w×w")
        w = self.weights.shape[2]
        if self.weights.shape[2:] != (w, w, w) or w % 2 == 0:
            raise ValidationError("kernel window must be cubic with an odd size")
        if not np.all(np.isfinite(self.weights)):
            raise ValidationError("kernel weights must be finite")

    @property
    def size(self) -> int:
        return self.weights.shape[2]

    @property
    def out_channels(self) -> int:
        return self.weights.shape[0]

    @property
    def in_channels(self) -> int:
        return self.weights.shape[1]


@attr.s(auto_attribs=True, frozen=True, eq=False)
class RotatedKernel(ReservoirKernel):
    """kernel resampled for one camera.

    `samples` holds the reservoir coordinates (w×w×w×3) each voxel was read
    from; `adjusted` flags the voxels whose coordinate had to be brought back
    inside the kernel cube.
    """

    rotation: np.ndarray = None
    method: RotationMethod = RotationMethod.discrete
    samples: np.ndarray = None
    adjusted: np.ndarray = None


""" Volume types """


@attr.s(auto_attribs=True, frozen=True, eq=False)
class SceneVolume:
    spec: VoxelGridSpec
    data: np.ndarray

    def __attrs_post_init__(self):
        if self.data.ndim != 4 or tuple(self.data.shape[1:]) != self.spec.dims:
            raise ShapeMismatchError("volume dims", self.spec.dims, self.data.shape[1:])
        if not np.all(np.isfinite(self.data)):
            raise ValidationError("volume data must be finite")

    @property
    def channels(self) -> int:
        return self.data.shape[0]


@attr.s(auto_attribs=True, frozen=True, eq=False)
class TsdfVolume:
    spec: VoxelGridSpec
    values: np.ndarray
    weights: np.ndarray
    truncation: float

    def __attrs_post_init__(self):
        for name in ("values", "weights"):
            shape = getattr(self, name).shape
            if tuple(shape) != self.spec.dims:
                raise ShapeMismatchError(f"tsdf {name} dims", self.spec.dims, shape)
        if np.any(np.abs(self.values) > 1.0 + 1e-12):
            raise ValidationError("tsdf values must lie in [-1, 1]")

    @property
    def observed(self) -> np.ndarray:
        return self.weights > 0


@attr.s(auto_attribs=True, frozen=True, eq=False)
class TriangleMesh:
    vertices: np.ndarray = attr.ib(factory=lambda: np.zeros((0, 3)))
    faces: np.ndarray = attr.ib(factory=lambda: np.zeros((0, 3), dtype=np.int64))

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0


""" Evaluation types """


@attr.s(auto_attribs=True)
class DepthEvalReport:
    """2D depth metrics over jointly valid pixels."""

    abs_rel: float
    abs_diff: float
    sq_rel: float
    rmse: float
    n: int


@attr.s(auto_attribs=True)
class GeomEvalReport:
    """3D geometry metrics."""

    acc: float
    comp: float
    precision: float
    recall: float
    f_score: float
    l1: float = None


""" Pipeline types """


@attr.s(auto_attribs=True, frozen=True)
class LossWeights:
    alpha: float = 1.0
    beta: float = 0.5
    gamma: float = 2.0

    def __attrs_post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValidationError("loss weights must be non-negative")


@attr.s(auto_attribs=True)
class Stage1Result:
    frame_id: int
    depth: DepthMap
    mask: OverlapMask
    masked: DepthMap
    losses: Dict[str, float] = None


@attr.s(auto_attribs=True)
class Stage2Result:
    unified: SceneVolume
    tsdf: TsdfVolume
    mesh: TriangleMesh


@attr.s(auto_attribs=True)
class EvalResult:
    depth: DepthEvalReport
    geometry: GeomEvalReport
    before_fusion: DepthEvalReport = None
    losses: Dict[str, float] = None


@attr.s(auto_attribs=True)
class Message:
    """VoxFuse Message type."""

    stage: str
    message: str = None
    code: str = None
    details: Dict = None


Cameras = List[Camera]

import numpy as np
from voxfuse.core.models import Camera, DepthMap, Intrinsics, Pose, VoxelGridSpec

K = Intrinsics(fx=16.0, fy=16.0, cx=7.5, cy=7.5, width=16, height=16)
CAMERA = Camera(K, Pose.identity())
GRID = VoxelGridSpec(origin=(-0.3, -0.3, 0.7), pitch=0.02, dims=(31, 31, 31))
TRUNCATION = 0.06
AXIS = 15


def wall(z: float, shape=(16, 16)) -> DepthMap:
    """fronto-parallel wall seen by a camera at the origin."""
    return DepthMap(np.full(shape, z))


def zero_crossing(values: np.ndarray, origin: float, pitch: float) -> float:
    """first + to − crossing of a 1D profile, linearly interpolated."""
    for k in range(len(values) - 1):
        if values[k] > 0 >= values[k + 1]:
            return origin + pitch * (k + values[k] / (values[k] - values[k + 1]))
    return np.nan

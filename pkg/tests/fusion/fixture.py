import numpy as np
from voxfuse.core.models import Camera, Intrinsics, Pose, VoxelGridSpec

K = Intrinsics(fx=8.0, fy=8.0, cx=3.5, cy=3.5, width=8, height=8)
SPEC = VoxelGridSpec(origin=(-0.5, -0.5, 0.5), pitch=0.25, dims=(5, 5, 5))
CAMERA = Camera(K, Pose.identity())


def sparse_depth(pixels: dict) -> np.ndarray:
    """8×8 depth raster, NaN except at the given (row, col) pixels."""
    data = np.full((8, 8), np.nan)
    for (row, col), z in pixels.items():
        data[row, col] = z
    return data

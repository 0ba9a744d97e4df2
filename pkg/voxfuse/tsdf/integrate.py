"""Projective TSDF integration of depth maps."""
import logging
import numpy as np
from typing import List
from voxfuse.core import geometry
from voxfuse.core.errors import ShapeMismatchError, ValidationError
from voxfuse.core.models import Camera, DepthMap, TsdfVolume, VoxelGridSpec

logger = logging.getLogger(__name__)

MAX_WEIGHT = 255.0


def new_tsdf_volume(spec: VoxelGridSpec, truncation: float) -> TsdfVolume:
    """unobserved volume: values +1, weights 0."""
    if not truncation > 0:
        raise ValidationError("truncation must be positive")
    return TsdfVolume(spec, np.ones(spec.dims), np.zeros(spec.dims), truncation)


def integrate_depth(vol: TsdfVolume, z: DepthMap, cam: Camera) -> TsdfVolume:
    """Return `vol` updated with one depth map (running average, unit weights).

    The signed distance is measured along the camera axis, positive in front
    of the surface; voxels farther than the truncation behind it are skipped.
    """
    K = cam.intrinsics
    if K.shape != z.shape:
        raise ShapeMismatchError("intrinsics resolution", z.shape, K.shape)

    points = cam.pose.camera_from_world().apply(geometry.voxel_centers(vol.spec))
    depth = points[..., 2]
    ahead = depth > 0
    safe = np.where(ahead, depth, 1.0)
    col = np.rint(K.fx * points[..., 0] / safe + K.cx)
    row = np.rint(K.fy * points[..., 1] / safe + K.cy)
    inside = ahead & (col >= 0) & (col <= K.width - 1) & (row >= 0) & (row <= K.height - 1)

    col = np.where(inside, col, 0).astype(np.int64)
    row = np.where(inside, row, 0).astype(np.int64)
    observed = inside & z.valid[row, col]
    sdf = np.where(observed, np.nan_to_num(z.data)[row, col] - depth, 0.0)
    update = observed & (sdf >= -vol.truncation)

    tsdf = np.clip(sdf / vol.truncation, -1.0, 1.0)
    weights = np.where(update, vol.weights + 1.0, vol.weights)
    values = np.where(
        update, (vol.weights * vol.values + tsdf) / np.maximum(weights, 1.0), vol.values
    )
    logger.debug(f"integrated depth map into {int(update.sum())} voxels")

    return TsdfVolume(
        vol.spec, values, np.minimum(weights, MAX_WEIGHT), vol.truncation
    )


def ground_truth_tsdf(
    depths: List[DepthMap], cams: List[Camera], spec: VoxelGridSpec, truncation: float
) -> TsdfVolume:
    """TSDF of a set of ground-truth depth maps, integrated in list order."""
    if len(depths) != len(cams):
        raise ShapeMismatchError("camera count", len(depths), len(cams))
    volume = new_tsdf_volume(spec, truncation)
    for depth, cam in zip(depths, cams):
        volume = integrate_depth(volume, depth, cam)
    return volume

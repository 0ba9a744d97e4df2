"""Feature back-projection, depth occupancy and the unified scene volume."""
import logging
import numpy as np
from typing import List, Tuple
from voxfuse.core import geometry
from voxfuse.core.errors import ShapeMismatchError, ValidationError
from voxfuse.core.models import (
    Camera,
    DepthMap,
    FeatureMap,
    SceneVolume,
    VoxelGridSpec,
)

logger = logging.getLogger(__name__)


def backproject_features(
    f: FeatureMap, cam: Camera, spec: VoxelGridSpec
) -> Tuple[SceneVolume, SceneVolume]:
    """Return the feature volume and the in-frustum count volume of one view.

    Every voxel center in front of the camera whose projection lands inside
    the image receives the bilinear feature sample, others stay zero.
    """
    K = cam.intrinsics
    if K.shape != f.shape:
        raise ShapeMismatchError("intrinsics resolution", f.shape, K.shape)

    points = cam.pose.camera_from_world().apply(geometry.voxel_centers(spec))
    z = points[..., 2]
    ahead = z > 0
    safe = np.where(ahead, z, 1.0)
    u = np.where(ahead, K.fx * points[..., 0] / safe + K.cx, -1.0)
    v = np.where(ahead, K.fy * points[..., 1] / safe + K.cy, -1.0)

    samples, inside = geometry.sample_image(f.data, u, v)
    logger.debug(f"backprojected features into {int(inside.sum())} voxels")
    return (
        SceneVolume(spec, samples.astype(np.float32)),
        SceneVolume(spec, inside[None].astype(np.float32)),
    )


def view_occupancy(depth: DepthMap, cam: Camera, spec: VoxelGridSpec) -> np.ndarray:
    """boolean voxels hit by at least one valid pixel of the view."""
    K = cam.intrinsics
    if K.shape != depth.shape:
        raise ShapeMismatchError("intrinsics resolution", depth.shape, K.shape)

    indicator = np.zeros(spec.dims, dtype=bool)
    rows, cols = np.nonzero(depth.valid)
    if len(rows) == 0:
        return indicator

    points = geometry.backproject(cols.astype(float), rows.astype(float), depth.data[rows, cols], K)
    world = cam.pose.world_from_camera().apply(points)
    voxels = np.rint(geometry.world_to_voxel(world, spec)).astype(np.int64)
    voxels = voxels[geometry.in_grid(voxels, spec)]
    indicator[voxels[:, 0], voxels[:, 1], voxels[:, 2]] = True
    return indicator


def embed_depth_occupancy(
    depths: List[DepthMap], cams: List[Camera], spec: VoxelGridSpec
) -> SceneVolume:
    """fraction of views whose back-projected depth hits each voxel."""
    if len(depths) == 0:
        raise ValidationError("at least one depth map is required")
    if len(depths) != len(cams):
        raise ShapeMismatchError("camera count", len(depths), len(cams))

    counts = np.zeros(spec.dims, dtype=np.int64)
    for depth, cam in zip(depths, cams):
        counts += view_occupancy(depth, cam, spec)

    logger.debug(f"occupancy: {int((counts > 0).sum())} voxels from {len(depths)} views")
    return SceneVolume(spec, (counts / len(depths))[None])


def build_unified_volume(features: SceneVolume, occupancy: SceneVolume) -> SceneVolume:
    """occupancy first, then the averaged pose-invariant features."""
    if features.spec != occupancy.spec:
        raise ShapeMismatchError("grid spec", features.spec, occupancy.spec)
    if occupancy.channels != 1:
        raise ShapeMismatchError("occupancy channels", 1, occupancy.channels)
    return SceneVolume(
        features.spec, np.concatenate([occupancy.data, features.data]).astype(np.float32)
    )


def split_unified_volume(unified: SceneVolume) -> Tuple[SceneVolume, SceneVolume]:
    """Return (features, occupancy)."""
    if unified.channels < 2:
        raise ShapeMismatchError("unified channels", ">= 2", unified.channels)
    return (
        SceneVolume(unified.spec, unified.data[1:]),
        SceneVolume(unified.spec, unified.data[:1]),
    )

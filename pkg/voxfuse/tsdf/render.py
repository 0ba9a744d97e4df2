"""Depth maps ray marched from a TSDF volume."""
import logging
import numpy as np
from scipy import ndimage
from voxfuse.core import geometry
from voxfuse.core.models import Camera, DepthMap, TsdfVolume

logger = logging.getLogger(__name__)

OBSERVED_LEVEL = 1.0 - 1e-9
NEAR = 1e-6


def _grid_interval(center: np.ndarray, directions: np.ndarray, vol: TsdfVolume):
    """entry and exit ray parameters of the interpolable grid box."""
    lower = np.asarray(vol.spec.origin)
    upper = lower + (np.asarray(vol.spec.dims) - 1) * vol.spec.pitch
    with np.errstate(divide="ignore", invalid="ignore"):
        t0 = (lower - center) / directions
        t1 = (upper - center) / directions
    parallel = directions == 0
    outside = parallel & ((center < lower) | (center > upper))
    t0 = np.where(parallel, np.where(outside, np.inf, -np.inf), t0)
    t1 = np.where(parallel, np.where(outside, -np.inf, np.inf), t1)
    near = np.max(np.minimum(t0, t1), axis=-1)
    far = np.min(np.maximum(t0, t1), axis=-1)
    return np.maximum(near, NEAR), far


def render_depth(vol: TsdfVolume, cam: Camera) -> DepthMap:
    """first front-to-back zero crossing along each pixel ray.

    Samples are spaced by half the truncation; a sample counts only when its
    8 interpolation corners are observed.
    """
    K = cam.intrinsics
    u, v = geometry.pixel_grid(*K.shape)
    rays = np.stack([(u - K.cx) / K.fx, (v - K.cy) / K.fy, np.ones_like(u)], axis=-1)
    world_from_camera = cam.pose.world_from_camera()
    directions = rays @ world_from_camera.R.T
    center = world_from_camera.t

    near, far = _grid_interval(center, directions, vol)
    step = 0.5 * vol.truncation / np.linalg.norm(directions, axis=-1)
    hit = far > near
    with np.errstate(invalid="ignore"):
        count = np.where(hit, np.ceil((far - near) / step), 0).astype(np.int64)

    observed = vol.observed.astype(float)
    depth = np.full(K.shape, np.nan)
    found = np.zeros(K.shape, dtype=bool)
    previous = np.full(K.shape, np.nan)
    t_previous = near.copy()
    for k in range(int(count.max(initial=0)) + 1):
        t = near + k * step
        active = hit & (k <= count) & ~found
        if not np.any(active):
            break
        t = np.where(hit, np.minimum(t, far), 0.0)
        coords = geometry.world_to_voxel(center + t[..., None] * directions, vol.spec)
        coords = np.moveaxis(coords, -1, 0)
        usable = ndimage.map_coordinates(observed, coords, order=1, mode="constant", cval=0.0)
        sample = ndimage.map_coordinates(vol.values, coords, order=1, mode="nearest")
        sample = np.where(active & (usable >= OBSERVED_LEVEL), sample, np.nan)

        crossing = (previous > 0) & (sample <= 0)
        fraction = previous / np.where(crossing, previous - sample, 1.0)
        depth = np.where(crossing, t_previous + fraction * (t - t_previous), depth)
        found |= crossing
        previous = sample
        t_previous = t

    logger.debug(f"rendered {int(found.sum())} valid pixels")
    return DepthMap(depth, valid=found)

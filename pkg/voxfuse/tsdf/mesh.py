"""Iso-surface extraction."""
import logging
import numpy as np
from skimage import measure
from voxfuse.core.models import TriangleMesh, TsdfVolume

logger = logging.getLogger(__name__)


def observed_cubes(vol: TsdfVolume) -> np.ndarray:
    """cube mask keyed by upper corner (skimage convention), set where all 8 corners are observed."""
    observed = vol.observed
    mask = np.zeros(vol.spec.dims, dtype=bool)
    if min(vol.spec.dims) < 2:
        return mask
    cubes = np.ones(tuple(d - 1 for d in vol.spec.dims), dtype=bool)
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                cubes &= observed[a:a + cubes.shape[0], b:b + cubes.shape[1], c:c + cubes.shape[2]]
    mask[1:, 1:, 1:] = cubes
    return mask


def extract_mesh(vol: TsdfVolume) -> TriangleMesh:
    """marching cubes at level 0 over fully observed cubes, world coordinates."""
    mask = observed_cubes(vol)
    values = vol.values[vol.observed]
    if not np.any(mask) or values.min() >= 0 or values.max() <= 0:
        logger.debug("no zero crossing in the observed volume")
        return TriangleMesh()

    try:
        vertices, faces, _, _ = measure.marching_cubes(
            vol.values, level=0.0, spacing=(vol.spec.pitch,) * 3, mask=mask
        )
    except (ValueError, RuntimeError) as e:
        logger.debug(f"marching cubes found no surface: {e}")
        return TriangleMesh()

    logger.debug(f"extracted {len(vertices)} vertices, {len(faces)} faces")
    return TriangleMesh(vertices + np.asarray(vol.spec.origin), faces.astype(np.int64))

"""Plane-sweep cost volumes, depth regression and overlap masks."""
import logging
import numpy as np
from typing import List
from scipy.special import softmax
from voxfuse.core.units import CostVolumeKind
from voxfuse.core.errors import ShapeMismatchError, ValidationError
from voxfuse.core.models import (
    Camera,
    CostVolume,
    DepthMap,
    FeatureMap,
    OverlapMask,
    SweepConfig,
)
from voxfuse.core import geometry

logger = logging.getLogger(__name__)

OVERLAP_TOLERANCE = 0.05
NEIGHBORS = 2


def plane_depths(cfg: SweepConfig) -> np.ndarray:
    """z_min·D/d for d = 1..D, strictly decreasing."""
    d = np.arange(1, cfg.planes + 1, dtype=float)
    return cfg.z_min * cfg.planes / d


def _check_views(shapes: List[tuple], cams: List[Camera], count: int):
    if len(shapes) != count or len(cams) != count:
        raise ValidationError(f"{count} views are required, received {len(shapes)}")
    for shape, cam in zip(shapes, cams):
        if shape != shapes[0]:
            raise ShapeMismatchError("view resolution", shapes[0], shape)
        if cam.intrinsics.shape != shape:
            raise ShapeMismatchError("intrinsics resolution", shape, cam.intrinsics.shape)


def warp_coordinates(ref: Camera, src: Camera, cfg: SweepConfig):
    """source pixel coordinates (D×H×W) of every reference pixel, per plane.

    Plane points behind the source camera get NaN coordinates.
    """
    u, v = geometry.pixel_grid(*ref.intrinsics.shape)
    relative = geometry.relative_pose(ref.pose, src.pose)
    us, vs = [], []
    for z in plane_depths(cfg):
        H = geometry.plane_homography(ref.intrinsics, src.intrinsics, relative, z)
        x, y = geometry.apply_homography(H, u, v)
        ahead = H[2, 0] * u + H[2, 1] * v + H[2, 2] > 0
        us.append(np.where(ahead, x, np.nan))
        vs.append(np.where(ahead, y, np.nan))
    return np.stack(us), np.stack(vs)


def build_initial_volume(
    ref: FeatureMap, neighbors: List[FeatureMap], cams: List[Camera], cfg: SweepConfig
) -> CostVolume:
    """3C×D×H×W stack of the reference and the two plane-warped neighbors.

    `cams` lists the reference camera first; intrinsics are at feature resolution.
    """
    _check_views([f.shape for f in [ref, *neighbors]], cams, NEIGHBORS + 1)
    if any(f.channels != ref.channels for f in neighbors):
        raise ShapeMismatchError("feature channels", ref.channels, [f.channels for f in neighbors])

    reference = np.broadcast_to(ref.data[:, None], (ref.channels, cfg.planes, *ref.shape))
    groups, coverage = [reference], []
    for feature, cam in zip(neighbors, cams[1:]):
        us, vs = warp_coordinates(cams[0], cam, cfg)
        warped, inside = geometry.sample_image(feature.data, us, vs)
        groups.append(warped)
        coverage.append(inside)

    logger.debug(f"initial volume: {3 * ref.channels} channels, {cfg.planes} planes")
    return CostVolume(
        np.concatenate(groups).astype(np.float32),
        CostVolumeKind.initial,
        coverage=np.stack(coverage),
    )


def regress_depth(vz: CostVolume, cfg: SweepConfig) -> DepthMap:
    """soft-argmin over the depth axis."""
    logits = _depth_logits(vz, cfg)
    probabilities = softmax(logits, axis=0)
    depths = plane_depths(cfg)[:, None, None]
    return DepthMap(np.clip((depths * probabilities).sum(axis=0), cfg.z_min, cfg.z_max))


def soft_argmin_grad(vz: CostVolume, cfg: SweepConfig, upstream: np.ndarray = None) -> np.ndarray:
    """d z̃ / d a_d = p_d (z_d − z̃), optionally chained with a per-pixel upstream gradient."""
    logits = _depth_logits(vz, cfg)
    probabilities = softmax(logits, axis=0)
    depths = plane_depths(cfg)[:, None, None]
    expected = (depths * probabilities).sum(axis=0)
    gradient = probabilities * (depths - expected[None])
    if upstream is not None:
        gradient = gradient * upstream[None]
    return gradient[None]


def _depth_logits(vz: CostVolume, cfg: SweepConfig) -> np.ndarray:
    if vz.kind != CostVolumeKind.aggregated_depth:
        raise ValidationError("depth regression expects an aggregated depth volume")
    if vz.planes != cfg.planes:
        raise ShapeMismatchError("depth planes", cfg.planes, vz.planes)
    if np.any(np.isnan(vz.data)):
        raise ValidationError("NaN depth logits")
    return vz.data[0].astype(float)


def overlap_probability(vm: CostVolume) -> np.ndarray:
    """D×H×W overlap probability (channel 0 of the 2 channel softmax)."""
    if vm.kind != CostVolumeKind.overlap:
        raise ValidationError("overlap masks expect an overlap volume")
    return softmax(vm.data.astype(float), axis=0)[0]


def overlap_mask(vm: CostVolume) -> OverlapMask:
    """max-pool of the overlap probability along the depth axis."""
    return OverlapMask(np.clip(overlap_probability(vm).max(axis=0), 0.0, 1.0))


def mask_depth(z: DepthMap, m: OverlapMask, threshold: float = 0.5) -> DepthMap:
    if z.shape != m.shape:
        raise ShapeMismatchError("mask resolution", z.shape, m.shape)
    return DepthMap(z.data, valid=z.valid & (m.data >= threshold))


def geometric_overlap_gt(
    z_gt: List[DepthMap], cams: List[Camera], tolerance: float = OVERLAP_TOLERANCE
) -> OverlapMask:
    """ground-truth overlap of the reference view (first) with its two neighbors.

    1 where the reference point lands inside both neighbor images with agreeing
    neighbor depth, 0 where it leaves either image (or is occluded), unknown
    where a required ground-truth depth is missing.
    """
    _check_views([z.shape for z in z_gt], cams, NEIGHBORS + 1)
    reference, ref_cam = z_gt[0], cams[0]
    u, v = geometry.pixel_grid(*reference.shape)
    K = ref_cam.intrinsics
    depth = np.where(reference.valid, reference.data, 1.0)
    points = np.stack(
        [(u - K.cx) / K.fx * depth, (v - K.cy) / K.fy * depth, depth], axis=-1
    )
    world = ref_cam.pose.world_from_camera().apply(points)

    outside = np.zeros(reference.shape, dtype=bool)
    unknown = ~reference.valid
    disagree = np.zeros(reference.shape, dtype=bool)
    for neighbor, cam in zip(z_gt[1:], cams[1:]):
        local = cam.pose.camera_from_world().apply(world)
        z = local[..., 2]
        ahead = z > 0
        safe = np.where(ahead, z, 1.0)
        Kn = cam.intrinsics
        un = Kn.fx * local[..., 0] / safe + Kn.cx
        vn = Kn.fy * local[..., 1] / safe + Kn.cy
        visible = ahead & geometry.in_image(un, vn, Kn)
        outside |= ~visible

        col = np.clip(np.rint(un), 0, Kn.width - 1).astype(int)
        row = np.clip(np.rint(vn), 0, Kn.height - 1).astype(int)
        observed = neighbor.valid[row, col]
        unknown |= visible & ~observed
        sampled = np.where(observed, neighbor.data[row, col], 0.0)
        disagree |= visible & observed & (np.abs(sampled - z) > tolerance * np.abs(z))

    overlap = (~outside & ~disagree).astype(float)
    known = reference.valid & (outside | ~unknown)
    logger.debug(
        f"overlap ground truth: {int(overlap[known].sum())} overlap, "
        f"{int((~known).sum())} unknown pixels"
    )
    return OverlapMask(np.where(known, overlap, 0.0), known=known)



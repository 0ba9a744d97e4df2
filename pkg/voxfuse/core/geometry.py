"""Camera projection, plane-sweep homographies and world/voxel maps."""
import logging
import numpy as np
from scipy import ndimage
from typing import Tuple
from voxfuse.core.models import Intrinsics, Pose, VoxelGridSpec
from voxfuse.core.units import PoseConvention
from voxfuse.core.errors import GeometryError

logger = logging.getLogger(__name__)

PLANE_NORMAL = np.array([0.0, 0.0, 1.0])


def project(points: np.ndarray, K: Intrinsics) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (u, v, z) for camera-frame points (..., 3)."""
    points = np.asarray(points, dtype=float)
    x, y, z = points[..., 0], points[..., 1], points[..., 2]
    if np.any(z <= 0):
        raise GeometryError("behind camera")

    return K.fx * x / z + K.cx, K.fy * y / z + K.cy, z


def backproject(u, v, z, K: Intrinsics) -> np.ndarray:
    """Return camera-frame points (..., 3) for pixels (u, v) at depth z."""
    u, v, z = (np.asarray(a, dtype=float) for a in (u, v, z))
    if np.any(z <= 0):
        raise GeometryError("depth must be positive")

    return np.stack([(u - K.cx) / K.fx * z, (v - K.cy) / K.fy * z, z * np.ones_like(u)], axis=-1)


def relative_pose(ref: Pose, src: Pose) -> Pose:
    """camera-from-camera transform taking reference-frame points to the source frame."""
    return src.camera_from_world().compose(ref.world_from_camera())


def plane_homography(K_ref: Intrinsics, K_src: Intrinsics, pose_ref_to_src: Pose, z: float) -> np.ndarray:
    """H = K_src (R + t nᵀ / z) K_ref⁻¹ for the fronto-parallel plane at depth z."""
    if not z > 0:
        raise GeometryError("plane depth must be positive")
    K_ref_matrix = K_ref.matrix
    if abs(np.linalg.det(K_ref_matrix)) < 1e-12:
        raise GeometryError("singular intrinsics")

    R, t = pose_ref_to_src.R, pose_ref_to_src.t
    return K_src.matrix @ (R + np.outer(t, PLANE_NORMAL) / z) @ K_ref.inverse


def apply_homography(H: np.ndarray, u: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    x = H[0, 0] * u + H[0, 1] * v + H[0, 2]
    y = H[1, 0] * u + H[1, 1] * v + H[1, 2]
    w = H[2, 0] * u + H[2, 1] * v + H[2, 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        return x / w, y / w


def pixel_grid(height: int, width: int) -> Tuple[np.ndarray, np.ndarray]:
    """Return (u, v) arrays of shape (height, width)."""
    v, u = np.mgrid[0:height, 0:width].astype(float)
    return u, v


def world_to_voxel(points: np.ndarray, spec: VoxelGridSpec) -> np.ndarray:
    """continuous voxel coordinates; callers check bounds."""
    return (np.asarray(points, dtype=float) - np.asarray(spec.origin)) / spec.pitch


def voxel_to_world(coords: np.ndarray, spec: VoxelGridSpec) -> np.ndarray:
    return np.asarray(spec.origin) + np.asarray(coords, dtype=float) * spec.pitch


def in_grid(coords: np.ndarray, spec: VoxelGridSpec) -> np.ndarray:
    """mask of integer voxel coordinates lying inside the grid."""
    dims = np.asarray(spec.dims)
    return np.all((coords >= 0) & (coords < dims), axis=-1)


def voxel_centers(spec: VoxelGridSpec) -> np.ndarray:
    """world coordinates of every voxel center, shape (Vx, Vy, Vz, 3)."""
    indices = np.stack(
        np.meshgrid(*(np.arange(d, dtype=float) for d in spec.dims), indexing="ij"), axis=-1
    )
    return voxel_to_world(indices, spec)


def in_image(u: np.ndarray, v: np.ndarray, K: Intrinsics) -> np.ndarray:
    return (u >= 0) & (u <= K.width - 1) & (v >= 0) & (v <= K.height - 1)


def orthonormalize(R: np.ndarray) -> np.ndarray:
    """closest rotation matrix (SVD projection)."""
    U, _, Vt = np.linalg.svd(np.asarray(R, dtype=float))
    D = np.diag([1.0, 1.0, np.sign(np.linalg.det(U @ Vt))])
    return U @ D @ Vt


def look_at(eye: np.ndarray, target: np.ndarray, down: np.ndarray = (0.0, 1.0, 0.0)) -> Pose:
    """camera-from-world pose at `eye` whose optical axis (+z) passes through `target`.

    Camera axes follow the x-right, y-down, z-forward convention. When the
    view runs along `down` (straight up or down) the world axis least aligned
    with the view stands in for it.
    """
    eye, target, down = (np.asarray(a, dtype=float) for a in (eye, target, down))
    forward = target - eye
    if np.linalg.norm(forward) == 0:
        raise GeometryError("eye and target coincide")
    z = forward / np.linalg.norm(forward)
    x = np.cross(down, z)
    if np.linalg.norm(x) < 1e-12:
        fallback = np.eye(3)[np.argmin(np.abs(z))]
        logger.debug(f"viewing direction parallel to the down vector, using {fallback}")
        x = np.cross(fallback, z)
    x = x / np.linalg.norm(x)
    y = np.cross(z, x)
    R = orthonormalize(np.stack([x, y, z]))
    return Pose(R, -R @ eye, PoseConvention.camera_from_world)


def rotation_angle(R: np.ndarray) -> float:
    """rotation angle in degrees."""
    return float(np.degrees(np.arccos(np.clip((np.trace(R) - 1.0) / 2.0, -1.0, 1.0))))


def sample_image(data: np.ndarray, u: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Bilinear samples of a C×H×W raster at (u, v).

    Returns the C×shape(u) samples, zero outside [0, W-1]×[0, H-1], and the
    in-bounds mask.
    """
    height, width = data.shape[-2:]
    inside = np.isfinite(u) & np.isfinite(v)
    inside &= (u >= 0) & (u <= width - 1) & (v >= 0) & (v <= height - 1)
    coords = np.stack([np.where(inside, v, 0.0), np.where(inside, u, 0.0)])
    samples = np.stack(
        [
            ndimage.map_coordinates(channel, coords, order=1, mode="nearest", prefilter=False)
            for channel in data
        ]
    )
    return np.where(inside, samples, 0.0), inside

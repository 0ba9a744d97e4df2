"""Reservoir kernels and their per-camera rotation.

Kernel offsets are measured from the kernel center r = (w - 1) / 2. The
discrete method rotates each offset on the sphere of its own radius, the
interpolation method rotates the raw offset and clamps it into the cube.
"""
import logging
import threading
import numpy as np
from typing import Dict, Tuple
from scipy import ndimage
from voxfuse.core.units import RotationMethod
from voxfuse.core.errors import ValidationError
from voxfuse.core.models import ReservoirKernel, RotatedKernel, check_rotation

logger = logging.getLogger(__name__)

SNAP_TOLERANCE = 1e-10
CACHE_DECIMALS = 12


def _center(w: int) -> float:
    if w < 1 or w % 2 == 0:
        raise ValidationError("kernel size must be odd")
    return (w - 1) / 2.0


def norm(v, w: int) -> np.ndarray:
    """unit-sphere direction of a kernel voxel, (0, 0, 0) for the center."""
    v = np.asarray(v, dtype=float)
    r = _center(w)
    if np.any(v < 0) or np.any(v > w - 1):
        raise ValidationError(f"voxel {tuple(v)} outside a {w}³ kernel")
    offset = v - r
    length = np.linalg.norm(offset)
    if length == 0:
        return np.zeros(3)
    return offset / length


def denorm(v, w: int, s) -> np.ndarray:
    """continuous kernel coordinate at the radius of `v` along direction `s`."""
    r = _center(w)
    length = np.linalg.norm(np.asarray(v, dtype=float) - r)
    return length * np.asarray(s, dtype=float) + r


def kernel_offsets(w: int) -> np.ndarray:
    """signed offsets of every kernel voxel, shape (w, w, w, 3)."""
    r = _center(w)
    axis = np.arange(w, dtype=float) - r
    return np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1)


def _snap(coords: np.ndarray) -> np.ndarray:
    nearest = np.rint(coords)
    return np.where(np.abs(coords - nearest) < SNAP_TOLERANCE, nearest, coords)


def _shell_project(offset: np.ndarray, source: np.ndarray, r: float) -> Tuple[np.ndarray, bool]:
    """bring an offset back inside the cube while keeping its length.

    Components beyond ±r are pinned to the faces and the remaining length is
    redistributed over the free components.
    """
    length = np.linalg.norm(offset)
    pinned = np.zeros(3, dtype=bool)
    result = offset.copy()
    adjusted = False
    for _ in range(3):
        over = ~pinned & (np.abs(result) > r + SNAP_TOLERANCE)
        if not np.any(over):
            break
        adjusted = True
        pinned |= over
        result[pinned] = np.sign(result[pinned]) * r
        free = ~pinned
        remaining = np.sqrt(max(length ** 2 - pinned.sum() * r ** 2, 0.0))
        direction = np.where(free, result, 0.0)
        if np.linalg.norm(direction) < SNAP_TOLERANCE:
            direction = np.where(free, source, 0.0)
        if np.linalg.norm(direction) < SNAP_TOLERANCE:
            direction = free.astype(float)
        if np.any(free):
            result[free] = (direction / np.linalg.norm(direction) * remaining)[free]
    return result, adjusted


def _sample(weights: np.ndarray, samples: np.ndarray) -> np.ndarray:
    """trilinear read of every (C_out, C_in) slice at `samples` (w, w, w, 3)."""
    coords = np.moveaxis(samples, -1, 0)
    rotated = np.empty_like(weights)
    for o in range(weights.shape[0]):
        for i in range(weights.shape[1]):
            rotated[o, i] = ndimage.map_coordinates(
                weights[o, i], coords, order=1, mode="nearest", prefilter=False
            )
    return rotated


def discrete_samples(w: int, R_inv: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """source coordinates of the discrete (sphere preserving) rotation."""
    r = _center(w)
    offsets = kernel_offsets(w)
    lengths = np.linalg.norm(offsets, axis=-1, keepdims=True)
    directions = np.divide(offsets, lengths, out=np.zeros_like(offsets), where=lengths > 0)
    rotated = lengths * (directions @ R_inv.T)

    adjusted = np.zeros(offsets.shape[:3], dtype=bool)
    for index in zip(*np.nonzero(np.any(np.abs(rotated) > r + SNAP_TOLERANCE, axis=-1))):
        rotated[index], adjusted[index] = _shell_project(rotated[index], offsets[index], r)

    return _snap(rotated + r), adjusted


def interp_samples(w: int, R_inv: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """source coordinates of the rotation-by-interpolation baseline."""
    r = _center(w)
    coords = kernel_offsets(w) @ R_inv.T + r
    clamped = np.clip(coords, 0.0, w - 1)
    adjusted = np.any(np.abs(clamped - coords) > SNAP_TOLERANCE, axis=-1)
    return _snap(clamped), adjusted


def rotate_kernel(
    W: ReservoirKernel, R_inv: np.ndarray, method: RotationMethod = RotationMethod.discrete
) -> RotatedKernel:
    R_inv = np.asarray(R_inv, dtype=float)
    check_rotation(R_inv)
    if method == RotationMethod.none:
        samples = kernel_offsets(W.size) + _center(W.size)
        adjusted = np.zeros((W.size,) * 3, dtype=bool)
        weights = W.weights.copy()
    else:
        sampler = discrete_samples if method == RotationMethod.discrete else interp_samples
        samples, adjusted = sampler(W.size, R_inv)
        weights = _sample(W.weights, samples)

    if np.any(adjusted):
        logger.debug(f"{method.value} rotation adjusted {int(adjusted.sum())} kernel voxels")
    return RotatedKernel(
        weights, rotation=R_inv, method=method, samples=samples, adjusted=adjusted
    )


def rotate_kernel_discrete(W: ReservoirKernel, R_inv: np.ndarray) -> RotatedKernel:
    return rotate_kernel(W, R_inv, RotationMethod.discrete)


def rotate_kernel_interp(W: ReservoirKernel, R_inv: np.ndarray) -> RotatedKernel:
    return rotate_kernel(W, R_inv, RotationMethod.interp)


def random_kernel(out_channels: int, in_channels: int, w: int = 3, seed: int = 0) -> ReservoirKernel:
    """unit variance gaussian weights from a fixed seed."""
    rng = np.random.default_rng(seed)
    return ReservoirKernel(rng.standard_normal((out_channels, in_channels, w, w, w)))


class KernelCache:
    """rotated kernels per (rotation, method), shared across worker threads."""

    def __init__(self, kernel: ReservoirKernel, method: RotationMethod = RotationMethod.discrete):
        self.kernel = kernel
        self.method = method
        self._kernels: Dict[bytes, RotatedKernel] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._kernels)

    def get(self, R_inv: np.ndarray) -> RotatedKernel:
        key = (np.round(np.asarray(R_inv, dtype=float), CACHE_DECIMALS) + 0.0).tobytes()
        with self._lock:
            if key not in self._kernels:
                self._kernels[key] = rotate_kernel(self.kernel, R_inv, self.method)
            return self._kernels[key]

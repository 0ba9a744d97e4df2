"""Posed 3D convolution of scene volumes."""
import logging
import numpy as np
from typing import List
from voxfuse.core.units import RotationMethod
from voxfuse.core.errors import ShapeMismatchError, ValidationError
from voxfuse.core.models import ReservoirKernel, SceneVolume
from voxfuse.posedconv.kernel import KernelCache, rotate_kernel

logger = logging.getLogger(__name__)


def conv3d(V: SceneVolume, W: ReservoirKernel) -> SceneVolume:
    """stride 1, zero padded correlation: out(v) = Σ_v' V(v + v') W(v')."""
    if V.channels != W.in_channels:
        raise ShapeMismatchError("kernel input channels", V.channels, W.in_channels)

    w, pad = W.size, W.size // 2
    X, Y, Z = V.spec.dims
    padded = np.pad(V.data, ((0, 0), (pad, pad), (pad, pad), (pad, pad)))
    output = np.zeros((W.out_channels, X, Y, Z))
    for a in range(w):
        for b in range(w):
            for c in range(w):
                window = padded[:, a:a + X, b:b + Y, c:c + Z]
                output += np.tensordot(W.weights[:, :, a, b, c], window, axes=(1, 0))

    return SceneVolume(V.spec, output)


def posed_conv3d(
    V: SceneVolume,
    W: ReservoirKernel,
    R_1_to_n: np.ndarray,
    method: RotationMethod = RotationMethod.discrete,
    cache: KernelCache = None,
) -> SceneVolume:
    """convolution with the kernel rotated by the inverse of the view rotation.

    A `cache` must hold the same kernel and rotation method.
    """
    if cache is not None and (cache.kernel is not W or cache.method != method):
        raise ValidationError("kernel cache built for another kernel or rotation method")
    R_inv = np.asarray(R_1_to_n, dtype=float).T
    rotated = cache.get(R_inv) if cache is not None else rotate_kernel(W, R_inv, method)
    return conv3d(V, rotated)


def average_posed_volumes(volumes: List[SceneVolume]) -> SceneVolume:
    if len(volumes) == 0:
        raise ValidationError("no volume to average")
    spec = volumes[0].spec
    for volume in volumes[1:]:
        if volume.spec != spec or volume.data.shape != volumes[0].data.shape:
            raise ShapeMismatchError("posed volume", volumes[0].data.shape, volume.data.shape)

    total = np.zeros(volumes[0].data.shape)
    for volume in volumes:
        total += volume.data
    logger.debug(f"averaged {len(volumes)} posed volumes")
    return SceneVolume(spec, total / len(volumes))

"""Stage one losses and their gradients."""
import numpy as np
from voxfuse.core.models import CostVolume, DepthMap, OverlapMask
from voxfuse.core.errors import ShapeMismatchError
from voxfuse.mvs.sweep import overlap_probability

SMOOTH_L1_BETA = 1.0


def smooth_l1(x: np.ndarray) -> np.ndarray:
    x = np.abs(x)
    return np.where(x < SMOOTH_L1_BETA, 0.5 * x ** 2, x - 0.5 * SMOOTH_L1_BETA)


def overlap_loss(pred: OverlapMask, gt: OverlapMask) -> float:
    """Σ |M̃ − M| over pixels with known ground truth."""
    _check(pred.shape, gt.shape)
    return float(np.abs(pred.data - gt.data)[gt.known].sum())


def overlap_loss_grad(vm: CostVolume, gt: OverlapMask) -> np.ndarray:
    """gradient of the overlap loss w.r.t. the 2×D×H×W overlap logits.

    Only the plane selected by the max-pool receives gradient.
    """
    probability = overlap_probability(vm)
    _check(probability.shape[1:], gt.shape)
    selected = probability.argmax(axis=0)
    pooled = np.take_along_axis(probability, selected[None], axis=0)[0]

    upstream = np.where(gt.known, np.sign(pooled - gt.data), 0.0)
    local = upstream * pooled * (1.0 - pooled)
    gradient = np.zeros(vm.data.shape)
    np.put_along_axis(gradient[0], selected[None], local[None], axis=0)
    gradient[1] = -gradient[0]
    return gradient


def _depth_weights(pred: DepthMap, gt: DepthMap, gt_mask: OverlapMask) -> np.ndarray:
    _check(pred.shape, gt.shape)
    _check(pred.shape, gt_mask.shape)
    return np.where(gt_mask.known & gt.valid & pred.valid, gt_mask.data, 0.0)


def depth_loss(pred: DepthMap, gt: DepthMap, gt_mask: OverlapMask) -> float:
    """Σ M·smoothL1(z − z̃) over pixels with valid ground truth."""
    weights = _depth_weights(pred, gt, gt_mask)
    error = np.nan_to_num(gt.data) - np.nan_to_num(pred.data)
    return float((weights * smooth_l1(error)).sum())


def depth_loss_grad(pred: DepthMap, gt: DepthMap, gt_mask: OverlapMask) -> np.ndarray:
    """gradient of the depth loss w.r.t. the predicted depths."""
    weights = _depth_weights(pred, gt, gt_mask)
    error = np.nan_to_num(gt.data) - np.nan_to_num(pred.data)
    return -weights * np.clip(error, -SMOOTH_L1_BETA, SMOOTH_L1_BETA)


def _check(expected, received):
    if tuple(expected) != tuple(received):
        raise ShapeMismatchError("loss resolution", expected, received)

import numpy as np
from voxfuse.core.models import LossWeights, TsdfVolume
from voxfuse.core.errors import ShapeMismatchError, ValidationError


def _check(pred: TsdfVolume, gt: TsdfVolume):
    if pred.spec != gt.spec:
        raise ShapeMismatchError("grid spec", gt.spec, pred.spec)


def tsdf_loss(pred: TsdfVolume, gt: TsdfVolume) -> float:
    """Σ |pred − gt| over voxels observed in the ground truth."""
    _check(pred, gt)
    return float(np.abs(pred.values - gt.values)[gt.observed].sum())


def tsdf_loss_grad(pred: TsdfVolume, gt: TsdfVolume) -> np.ndarray:
    _check(pred, gt)
    return np.where(gt.observed, np.sign(pred.values - gt.values), 0.0)


def total_loss(
    depth_loss: float, overlap_loss: float, tsdf_loss: float, weights: LossWeights = None
) -> float:
    weights = weights or LossWeights()
    terms = (depth_loss, overlap_loss, tsdf_loss)
    if not all(np.isfinite(terms)):
        raise ValidationError("losses must be finite")
    return (
        weights.alpha * depth_loss + weights.beta * overlap_loss + weights.gamma * tsdf_loss
    )

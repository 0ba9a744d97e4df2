import logging
import numpy as np
from voxfuse.core.units import RelativeDenominator
from voxfuse.core.models import DepthEvalReport, DepthMap
from voxfuse.core.errors import DataError, ShapeMismatchError

logger = logging.getLogger(__name__)


def eval_depth(
    pred: DepthMap,
    gt: DepthMap,
    denominator: RelativeDenominator = RelativeDenominator.predicted,
) -> DepthEvalReport:
    """AbsRel, AbsDiff, SqRel and RMSE over jointly valid pixels.

    Relative metrics divide by the predicted depth unless `denominator`
    selects the ground truth.
    """
    if pred.shape != gt.shape:
        raise ShapeMismatchError("depth resolution", gt.shape, pred.shape)
    joint = pred.valid & gt.valid
    n = int(joint.sum())
    if n == 0:
        raise DataError("no jointly valid pixels")

    z_pred, z_gt = pred.data[joint], gt.data[joint]
    error = np.abs(z_gt - z_pred)
    scale = z_pred if denominator == RelativeDenominator.predicted else z_gt
    logger.debug(f"depth evaluation over {n} pixels")

    return DepthEvalReport(
        abs_rel=float(np.mean(error / scale)),
        abs_diff=float(np.mean(error)),
        sq_rel=float(np.mean(error ** 2 / scale)),
        rmse=float(np.sqrt(np.mean(error ** 2))),
        n=n,
    )

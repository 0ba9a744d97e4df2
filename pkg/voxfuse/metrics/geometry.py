"""3D geometry metrics."""
import logging
import numpy as np
from scipy.spatial import cKDTree
from voxfuse.core.units import PointDistance
from voxfuse.core.errors import DataError, ShapeMismatchError
from voxfuse.core.models import GeomEvalReport, TriangleMesh, TsdfVolume

logger = logging.getLogger(__name__)

F_THRESHOLD = 0.05


def eval_tsdf_l1(pred: TsdfVolume, gt: TsdfVolume) -> float:
    """mean |a − ã| over observed ground-truth voxels with a < 1."""
    if pred.spec != gt.spec:
        raise ShapeMismatchError("grid spec", gt.spec, pred.spec)
    selection = gt.observed & (gt.values < 1.0)
    if not np.any(selection):
        raise DataError("no ground-truth voxel below the truncation")
    return float(np.mean(np.abs(gt.values[selection] - pred.values[selection])))


def nearest_distances(
    queries: np.ndarray, points: np.ndarray, distance: PointDistance = PointDistance.l1
) -> np.ndarray:
    """exact nearest neighbor distance of every query point."""
    distances, _ = cKDTree(points).query(queries, k=1, p=distance.value)
    return distances


def eval_pointcloud(
    pred: np.ndarray,
    gt: np.ndarray,
    threshold: float = F_THRESHOLD,
    distance: PointDistance = PointDistance.l1,
) -> GeomEvalReport:
    pred, gt = np.asarray(pred, dtype=float), np.asarray(gt, dtype=float)
    if len(pred) == 0 or len(gt) == 0:
        raise DataError("point sets must not be empty")

    to_gt = nearest_distances(pred, gt, distance)
    to_pred = nearest_distances(gt, pred, distance)
    precision = float(np.mean(to_gt < threshold))
    recall = float(np.mean(to_pred < threshold))
    f_score = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    logger.debug(f"point cloud evaluation: {len(pred)} predicted, {len(gt)} ground-truth points")

    return GeomEvalReport(
        acc=float(np.mean(to_gt)),
        comp=float(np.mean(to_pred)),
        precision=precision,
        recall=recall,
        f_score=f_score,
    )


def eval_mesh(
    mesh: TriangleMesh,
    gt: np.ndarray,
    threshold: float = F_THRESHOLD,
    distance: PointDistance = PointDistance.l1,
) -> GeomEvalReport:
    """point cloud metrics with the mesh vertices as predicted points."""
    if mesh.is_empty:
        raise DataError("empty mesh")
    return eval_pointcloud(mesh.vertices, gt, threshold, distance)

"""Stage one (multi-view stereo), stage two (fusion) and evaluation runners."""
import os
import logging
import numpy as np
from typing import List, Optional, Tuple
from voxfuse import mvs, tsdf
from voxfuse.core import Settings
from voxfuse.core.utils import exec_parrallel
from voxfuse.core.utils.pipeline import Job, Pipeline
from voxfuse.core.utils import formats
from voxfuse.core.errors import DataError, NotEnoughFramesError, ShapeMismatchError
from voxfuse.core.models import (
    Camera,
    DepthMap,
    EvalResult,
    Message,
    ReservoirKernel,
    SceneVolume,
    Stage1Result,
    Stage2Result,
)
from voxfuse.fusion import backproject_features, embed_depth_occupancy, build_unified_volume
from voxfuse.posedconv import KernelCache, posed_conv3d, average_posed_volumes, random_kernel
from voxfuse.metrics import eval_depth, eval_mesh, eval_tsdf_l1
from voxfuse.pipeline.dataset import Dataset

logger = logging.getLogger(__name__)

WINDOW = 3
FRAME = "{:06d}"


def _cameras(ds: Dataset, settings: Settings) -> List[Camera]:
    expected = (settings.image_height, settings.image_width)
    if ds.intrinsics.shape != expected:
        raise ShapeMismatchError("dataset resolution", expected, ds.intrinsics.shape)
    return [ds.camera(i, settings.downsample) for i in range(len(ds))]


def _features(ds: Dataset, indices: List[int], gateway: mvs.Gateway, settings: Settings) -> dict:
    features = exec_parrallel(
        lambda i: mvs.extract_features(ds.image(i), gateway), indices, settings.workers
    )
    return dict(zip(indices, features))


""" Stage one """


def run_stage1(ds: Dataset, settings: Settings, output: str = None) -> List[Stage1Result]:
    """depth, overlap mask and masked depth of every interior frame.

    With `use_mask` off the masked depth is the unmasked regression output.
    """
    if len(ds) < WINDOW:
        raise NotEnoughFramesError(len(ds), WINDOW)

    gateway = mvs.create_gateway(settings)
    cameras = _cameras(ds, settings)
    features = _features(ds, list(range(len(ds))), gateway, settings)
    shape = settings.feature_shape

    def process(index: int) -> Stage1Result:
        window = [index, index - 1, index + 1]
        initial = mvs.build_initial_volume(
            features[index],
            [features[index - 1], features[index + 1]],
            [cameras[i] for i in window],
            settings.sweep,
        )
        vz, vm = mvs.aggregate(initial, gateway)
        depth = mvs.regress_depth(vz, settings.sweep)
        mask = mvs.overlap_mask(vm)
        masked = depth
        if settings.use_mask:
            masked = mvs.mask_depth(depth, mask, settings.mask_threshold)

        losses = None
        if ds.has_ground_truth:
            gt = [ds.depth(i, shape) for i in window]
            gt_mask = mvs.geometric_overlap_gt(
                gt, [cameras[i] for i in window], settings.overlap_tolerance
            )
            losses = dict(
                depth=mvs.depth_loss(depth, gt[0], gt_mask),
                overlap=mvs.overlap_loss(mask, gt_mask),
            )
        logger.debug(f"frame {index}: {int(masked.valid.sum())} masked depth pixels")
        return Stage1Result(index, depth, mask, masked, losses)

    results = exec_parrallel(process, list(range(1, len(ds) - 1)), settings.workers)
    if output is not None:
        save_stage1(output, results)
    return results


def save_stage1(output: str, results: List[Stage1Result]):
    for result in results:
        name = FRAME.format(result.frame_id)
        formats.save_depth(os.path.join(output, "depth", f"{name}.vxfd"), result.depth)
        formats.save_mask(os.path.join(output, "mask", f"{name}.png"), result.mask)
        formats.save_depth(os.path.join(output, "masked", f"{name}.vxfd"), result.masked)


def load_stage1(output: str, ds: Dataset) -> List[Stage1Result]:
    """Stage one results persisted by `save_stage1`, for the interior frames of `ds`."""
    results = []
    for index in range(1, len(ds) - 1):
        name = FRAME.format(index)
        results.append(
            Stage1Result(
                index,
                formats.load_depth(os.path.join(output, "depth", f"{name}.vxfd")),
                formats.load_mask(os.path.join(output, "mask", f"{name}.png")),
                formats.load_depth(os.path.join(output, "masked", f"{name}.vxfd")),
            )
        )
    return results


""" Stage two """


def reservoir_kernel(settings: Settings) -> ReservoirKernel:
    if settings.kernel_path is not None:
        kernel = formats.load_kernel(settings.kernel_path)
    else:
        kernel = random_kernel(
            settings.channels, settings.channels, settings.kernel_size, settings.kernel_seed
        )
    if kernel.in_channels != settings.channels:
        raise ShapeMismatchError("kernel input channels", settings.channels, kernel.in_channels)
    return kernel


def run_stage2(
    ds: Dataset, stage1: List[Stage1Result], settings: Settings, output: str = None
) -> Stage2Result:
    """unified scene volume, fused TSDF and mesh.

    With `use_occupancy` off the occupancy channel is kept but zeroed.
    """
    if len(stage1) == 0:
        raise DataError("no stage one output to fuse")

    spec = settings.grid
    gateway = mvs.create_gateway(settings)
    indices = [result.frame_id for result in stage1]
    cameras = {i: ds.camera(i, settings.downsample) for i in indices}
    features = _features(ds, indices, gateway, settings)
    cache = KernelCache(reservoir_kernel(settings), settings.rotation)

    def posed(index: int):
        volume, _ = backproject_features(features[index], cameras[index], spec)
        rotation = cameras[index].pose.camera_from_world().R
        return posed_conv3d(volume, cache.kernel, rotation, cache.method, cache=cache)

    posed_features = average_posed_volumes(exec_parrallel(posed, indices, settings.workers))
    masked = [result.masked for result in stage1]
    occupancy = embed_depth_occupancy(masked, [cameras[i] for i in indices], spec)
    if not settings.use_occupancy:
        occupancy = SceneVolume(spec, np.zeros_like(occupancy.data))
    unified = build_unified_volume(posed_features, occupancy)

    volume = tsdf.new_tsdf_volume(spec, settings.tsdf_truncation)
    for index, depth in zip(indices, masked):
        volume = tsdf.integrate_depth(volume, depth, cameras[index])
    mesh = tsdf.extract_mesh(volume)
    if mesh.is_empty:
        logger.warning("fused volume has no surface, the mesh is empty")

    result = Stage2Result(unified, volume, mesh)
    if output is not None:
        save_stage2(output, result)
    return result


def save_stage2(output: str, result: Stage2Result):
    formats.save_volume(os.path.join(output, "unified.vxfv"), result.unified)
    formats.save_tsdf(os.path.join(output, "tsdf.vxfv"), result.tsdf)
    formats.save_mesh(os.path.join(output, "mesh.ply"), result.mesh)


""" Evaluation """


def _stack(depths: List[DepthMap]) -> DepthMap:
    return DepthMap(
        np.concatenate([d.data for d in depths]), valid=np.concatenate([d.valid for d in depths])
    )


def run_eval(
    ds: Dataset, stage1: List[Stage1Result], stage2: Stage2Result, settings: Settings
) -> EvalResult:
    """after-fusion depth, before-fusion depth and 3D metrics against ground truth."""
    if not ds.has_ground_truth:
        raise DataError("evaluation needs ground-truth depth maps")
    if stage2.tsdf.spec != settings.grid:
        raise ShapeMismatchError("grid spec", settings.grid, stage2.tsdf.spec)

    shape = settings.feature_shape
    indices = [result.frame_id for result in stage1]
    cameras = [ds.camera(i, settings.downsample) for i in range(len(ds))]
    gt_depths = [ds.depth(i, shape) for i in range(len(ds))]

    rendered = [tsdf.render_depth(stage2.tsdf, cameras[i]) for i in indices]
    ground_truth = _stack([gt_depths[i] for i in indices])
    after = eval_depth(_stack(rendered), ground_truth, settings.denominator)
    before = eval_depth(_stack([r.depth for r in stage1]), ground_truth, settings.denominator)

    gt_tsdf = tsdf.ground_truth_tsdf(gt_depths, cameras, settings.grid, settings.tsdf_truncation)
    gt_mesh = tsdf.extract_mesh(gt_tsdf)
    if gt_mesh.is_empty:
        raise DataError("ground-truth volume has no surface")
    geometry = eval_mesh(stage2.mesh, gt_mesh.vertices, settings.f_threshold, settings.distance)
    geometry.l1 = eval_tsdf_l1(stage2.tsdf, gt_tsdf)

    losses = None
    if all(r.losses for r in stage1):
        losses = dict(
            depth=sum(r.losses["depth"] for r in stage1),
            overlap=sum(r.losses["overlap"] for r in stage1),
            tsdf=tsdf.tsdf_loss(stage2.tsdf, gt_tsdf),
        )
        losses["total"] = tsdf.total_loss(
            losses["depth"], losses["overlap"], losses["tsdf"], settings.loss_weights
        )
    logger.info(f"after fusion RMSE {after.rmse:.6f}, before fusion RMSE {before.rmse:.6f}")

    return EvalResult(after, geometry, before_fusion=before, losses=losses)


""" Full run """


def run(
    ds: Dataset, settings: Settings, output: str = None
) -> Tuple[List[Stage1Result], Stage2Result, Optional[EvalResult]]:
    """stage one, stage two, then evaluation when ground truth is available."""
    results = {}

    def process(job: Job):
        if job.id == "sweep":
            results[job.id] = run_stage1(job.data, settings, output and os.path.join(output, "stage1"))
        elif job.id == "fuse":
            results[job.id] = run_stage2(ds, job.data, settings, output and os.path.join(output, "stage2"))
        else:
            results[job.id] = run_eval(ds, results["sweep"], job.data, settings)
        return results[job.id]

    pipeline = Pipeline(
        sweep=lambda _: Job("sweep", ds),
        fuse=lambda stage1: Job("fuse", stage1),
        evaluate=lambda stage2: Job(
            "evaluate",
            stage2 if ds.has_ground_truth else None,
            fallback=Message(stage="evaluate", message="no ground-truth depth, evaluation skipped"),
        ),
    )
    stage1, stage2, evaluation = pipeline.apply(process)
    return stage1, stage2, evaluation if isinstance(evaluation, EvalResult) else None

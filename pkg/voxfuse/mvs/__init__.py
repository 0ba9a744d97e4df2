from voxfuse.mvs.gateway import Gateway, create as create_gateway
from voxfuse.mvs.sweep import (
    plane_depths,
    build_initial_volume,
    regress_depth,
    soft_argmin_grad,
    overlap_mask,
    mask_depth,
    geometric_overlap_gt,
)
from voxfuse.mvs.losses import (
    overlap_loss,
    overlap_loss_grad,
    depth_loss,
    depth_loss_grad,
)
from voxfuse.core.models import CostVolume, FeatureMap


def aggregate(initial: CostVolume, gateway: Gateway):
    return gateway.aggregator.aggregate(initial)


def extract_features(image, gateway: Gateway) -> FeatureMap:
    return gateway.extractor.extract(image)

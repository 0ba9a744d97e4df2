"""VoxFuse cost Aggregator base class definition module."""

import attr
import numpy as np
from abc import ABC
from typing import Tuple
from scipy import ndimage
from voxfuse.core.settings import Settings
from voxfuse.core.units import CostVolumeKind
from voxfuse.core.models import CostVolume
from voxfuse.core.errors import MethodNotSupportedError, ValidationError

EPSILON = 1e-12


@attr.s(auto_attribs=True)
class Aggregator(ABC):
    """Initial cost volume reducer (Interface)

    Turns a 3C×D×H×W initial volume into the depth logits (1×D×H×W) and the
    overlap logits (2×D×H×W).
    """

    settings: Settings

    def matching_cost(self, groups: np.ndarray, coverage: np.ndarray) -> np.ndarray:
        """ Return the D×H×W matching cost, lower is better """
        raise MethodNotSupportedError(
            self.__class__.matching_cost.__name__, self.__class__.__name__
        )

    def aggregate(self, initial: CostVolume) -> Tuple[CostVolume, CostVolume]:
        if initial.kind != CostVolumeKind.initial or initial.coverage is None:
            raise ValidationError("aggregation expects an initial cost volume with coverage")
        channels = initial.data.shape[0] // 3
        groups = initial.data.reshape(3, channels, *initial.data.shape[1:])
        coverage = initial.coverage.astype(bool)

        cost = self.matching_cost(groups, coverage)
        logits = self.depth_logits(cost, np.any(coverage, axis=0))
        overlap = np.all(coverage, axis=0).astype(float)

        return (
            CostVolume(logits[None], CostVolumeKind.aggregated_depth),
            CostVolume(np.stack([overlap, 1.0 - overlap]), CostVolumeKind.overlap),
        )

    def depth_logits(self, cost: np.ndarray, matched: np.ndarray) -> np.ndarray:
        """negative normalized cost, box smoothed over 3×3 pixels within each plane.

        Planes without any in-bounds neighbor take the pixel's worst cost.
        The plane axis is left unsmoothed so the lowest cost plane keeps the
        highest logit.
        """
        worst = np.max(np.where(matched, cost, -np.inf), axis=0)
        worst = np.where(np.isfinite(worst), worst, 0.0)
        cost = np.where(matched, cost, worst[None])
        cost = ndimage.uniform_filter(cost, size=(1, 3, 3), mode="nearest")

        lowest = cost.min(axis=0, keepdims=True)
        spread = cost.mean(axis=0, keepdims=True) - lowest
        return -self.settings.sharpness * (cost - lowest) / (spread + EPSILON)

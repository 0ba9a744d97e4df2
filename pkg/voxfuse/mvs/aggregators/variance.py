"""Cross view feature variance (photo-consistency) aggregation."""
import attr
import numpy as np
from voxfuse.mvs.aggregator import Aggregator as BaseAggregator


@attr.s(auto_attribs=True)
class Aggregator(BaseAggregator):
    def matching_cost(self, groups: np.ndarray, coverage: np.ndarray) -> np.ndarray:
        weights = np.concatenate([np.ones((1, *coverage.shape[1:])), coverage])
        weights = weights[:, None]
        count = weights.sum(axis=0)
        mean = (weights * groups).sum(axis=0) / count
        variance = (weights * (groups - mean) ** 2).sum(axis=0) / count
        return variance.mean(axis=0)

"""Mean absolute difference to the reference features (plane-sweep SAD)."""
import attr
import numpy as np
from voxfuse.mvs.aggregator import Aggregator as BaseAggregator


@attr.s(auto_attribs=True)
class Aggregator(BaseAggregator):
    def matching_cost(self, groups: np.ndarray, coverage: np.ndarray) -> np.ndarray:
        reference, neighbors = groups[0], groups[1:]
        difference = np.abs(neighbors - reference[None]).mean(axis=1)
        count = np.maximum(coverage.sum(axis=0), 1)
        return (difference * coverage).sum(axis=0) / count

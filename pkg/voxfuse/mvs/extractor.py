"""VoxFuse feature Extractor base class definition module."""

import attr
from abc import ABC
import numpy as np
from voxfuse.core.settings import Settings
from voxfuse.core.models import FeatureMap
from voxfuse.core.errors import MethodNotSupportedError


@attr.s(auto_attribs=True)
class Extractor(ABC):
    """Image to feature map extractor (Interface)
    """

    settings: Settings

    def extract(self, image: np.ndarray) -> FeatureMap:
        """ Create a C×H×W feature map from an H×W intensity image """
        raise MethodNotSupportedError(
            self.__class__.extract.__name__, self.__class__.__name__
        )

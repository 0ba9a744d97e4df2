"""Average pooled intensity and Sobel gradient features."""
import attr
import logging
import numpy as np
from scipy import ndimage
from voxfuse.core.models import FeatureMap
from voxfuse.core.errors import ShapeMismatchError
from voxfuse.mvs.extractor import Extractor as BaseExtractor

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True)
class Extractor(BaseExtractor):
    def extract(self, image: np.ndarray) -> FeatureMap:
        factor = self.settings.downsample
        expected = (self.settings.image_height, self.settings.image_width)
        if image.shape != expected:
            raise ShapeMismatchError("image resolution", expected, image.shape)

        height, width = image.shape[0] // factor, image.shape[1] // factor
        pooled = image.reshape(height, factor, width, factor).mean(axis=(1, 3))
        base = np.stack(
            [pooled, ndimage.sobel(pooled, axis=1), ndimage.sobel(pooled, axis=0)]
        )
        repeats = -(-self.settings.channels // len(base))
        data = np.tile(base, (repeats, 1, 1))[: self.settings.channels]
        logger.debug(f"extracted {data.shape} features")

        return FeatureMap(data.astype(np.float32))

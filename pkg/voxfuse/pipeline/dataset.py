"""Dataset ingestion: color/depth/pose frames and shared intrinsics."""
import os
import re
import json
import attr
import logging
import numpy as np
from PIL import Image
from typing import List, Optional, Tuple
from voxfuse.core.errors import DataError, ShapeMismatchError
from voxfuse.core.models import Camera, DepthMap, Intrinsics, Pose
from voxfuse.core.utils.formats import (
    read_artifact,
    png_to_image,
    png_to_depth,
    text_to_pose,
    text_to_intrinsics,
)
from voxfuse.synthetic.scene import Scene, load_scene
from voxfuse.synthetic.dataset import frame_paths

logger = logging.getLogger(__name__)

FRAME_PATTERN = re.compile(r"^(\d{6})\.png$")


@attr.s(auto_attribs=True, frozen=True)
class Frame:
    index: int
    color: str
    pose: str
    depth: Optional[str] = None


@attr.s(auto_attribs=True, frozen=True)
class Dataset:
    root: str
    frames: List[Frame]
    intrinsics: Intrinsics

    def __len__(self):
        return len(self.frames)

    @property
    def has_ground_truth(self) -> bool:
        return len(self.frames) > 0 and all(f.depth is not None for f in self.frames)

    def image(self, index: int) -> np.ndarray:
        image = read_artifact(self.frames[index].color, png_to_image)
        if image.shape != self.intrinsics.shape:
            raise ShapeMismatchError("image resolution", self.intrinsics.shape, image.shape)
        return image

    def pose(self, index: int) -> Pose:
        return read_artifact(self.frames[index].pose, text_to_pose)

    def camera(self, index: int, downsample: int = 1) -> Camera:
        intrinsics = self.intrinsics if downsample == 1 else self.intrinsics.scaled(downsample)
        return Camera(intrinsics, self.pose(index))

    def depth(self, index: int, shape: Tuple[int, int] = None) -> DepthMap:
        """ground-truth depth, nearest-resized to `shape` when given."""
        path = self.frames[index].depth
        if path is None:
            raise DataError(f"frame {index} has no ground-truth depth")
        depth = read_artifact(path, png_to_depth)
        if shape is None or depth.shape == tuple(shape):
            return depth
        return resize_depth(depth, shape)

    def scene(self) -> Optional[Scene]:
        path = os.path.join(self.root, "scene.json")
        if not os.path.isfile(path):
            return None
        return read_artifact(path, lambda content: load_scene(json.loads(content)))


def resize_depth(depth: DepthMap, shape: Tuple[int, int]) -> DepthMap:
    height, width = shape
    values = np.where(depth.valid, depth.data, 0.0).astype(np.float32)
    resized = np.asarray(
        Image.fromarray(values).resize((width, height), resample=Image.NEAREST), dtype=float
    )
    return DepthMap(resized, valid=resized > 0)


def load_dataset(root: str) -> Dataset:
    color = os.path.join(root, "color")
    if not os.path.isdir(color):
        raise DataError(f"missing color directory in {root}", details=dict(root=root))

    indices = sorted(
        int(match.group(1))
        for match in (FRAME_PATTERN.match(name) for name in os.listdir(color))
        if match
    )
    if indices != list(range(len(indices))):
        raise DataError("frame ids must be dense and start at 0", details=dict(ids=indices))

    frames = []
    for index in indices:
        paths = frame_paths(root, index)
        if not os.path.isfile(paths["pose"]):
            raise DataError(f"missing pose for frame {index}", details=dict(path=paths["pose"]))
        depth = paths["depth"] if os.path.isfile(paths["depth"]) else None
        frames.append(Frame(index, paths["color"], paths["pose"], depth))

    intrinsics = read_artifact(os.path.join(root, "intrinsics.txt"), text_to_intrinsics)
    logger.debug(f"dataset {root}: {len(frames)} frames")
    return Dataset(root, frames, intrinsics)

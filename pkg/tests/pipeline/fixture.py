import numpy as np
from voxfuse.core.settings import Settings
from voxfuse.core.models import Intrinsics, Pose, VoxelGridSpec
from voxfuse.synthetic import Plane, Scene, write_dataset

K = Intrinsics(fx=100.0, fy=100.0, cx=79.5, cy=59.5, width=160, height=120)
WALL = Scene([Plane(point=(0.0, 0.0, 2.0), normal=(0.0, 0.0, -1.0), texture=1)])

GRID = VoxelGridSpec(origin=(-0.6, -0.4, 1.75), pitch=0.1, dims=(13, 9, 6))
SETTINGS = dict(
    image_height=120, image_width=160, downsample=2, channels=4, grid=GRID,
)

SETTINGS_FLAGS = [
    "--image-size", "120", "160",
    "--downsample", "2",
    "--channels", "4",
    "--origin", "-0.6", "-0.4", "1.75",
    "--pitch", "0.1",
    "--dims", "13", "9", "6",
]


def settings(**overrides) -> Settings:
    return Settings(**{**SETTINGS, **overrides})


def wall_dataset(root: str, frames: int = 5) -> str:
    """cameras 0.4 m apart along x, all facing the wall."""
    offsets = (np.arange(frames) - (frames - 1) / 2.0) * 0.4
    poses = [Pose(np.eye(3), [-x, 0.0, 0.0]) for x in offsets]
    return write_dataset(root, WALL, poses, K)

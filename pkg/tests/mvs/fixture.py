import numpy as np
from voxfuse.core.settings import Settings
from voxfuse.core.models import Camera, Intrinsics, Pose
from voxfuse.synthetic import Plane, Scene, render

FULL_K = Intrinsics(fx=100.0, fy=100.0, cx=79.5, cy=59.5, width=160, height=120)
BASELINE = 0.4
WALL_DEPTH = 2.0
WALL_PLANE = 11
WALL = Scene([Plane(point=(0.0, 0.0, WALL_DEPTH), normal=(0.0, 0.0, -1.0), texture=1)])

SETTINGS = Settings(image_height=120, image_width=160, downsample=2, channels=6)


def camera_at(x: float, K: Intrinsics = FULL_K, R: np.ndarray = np.eye(3)) -> Camera:
    """camera centered at (x, 0, 0)."""
    return Camera(K, Pose(R, -R @ np.array([x, 0.0, 0.0])))


# reference first, then the previous and next neighbors
CAMERAS = [camera_at(0.0), camera_at(-BASELINE), camera_at(BASELINE)]


def wall_images():
    return [render(WALL, cam)[0] for cam in CAMERAS]


def feature_cameras(cameras, factor: int = 2):
    return [cam.scaled(factor) for cam in cameras]

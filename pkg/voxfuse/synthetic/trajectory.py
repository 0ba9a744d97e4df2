"""Camera trajectories around a look-at point."""
import attr
import numpy as np
from typing import List
from voxfuse.core import geometry
from voxfuse.core.models import Pose
from voxfuse.core.errors import ValidationError


@attr.s(auto_attribs=True, frozen=True, eq=False)
class Trajectory:
    poses: List[Pose]
    center: np.ndarray
    radius: float
    step: float
    max_rotation: float = 180.0

    def __attrs_post_init__(self):
        for previous, current in zip(self.poses, self.poses[1:]):
            relative = current.camera_from_world().R @ previous.camera_from_world().R.T
            if geometry.rotation_angle(relative) > self.max_rotation + 1e-9:
                raise ValidationError("consecutive cameras rotate more than allowed")

    def __len__(self):
        return len(self.poses)


def orbit_eye(center: np.ndarray, radius: float, azimuth: float, elevation: float) -> np.ndarray:
    """camera position, degrees; azimuth 0 sits on −z looking toward +z, y points down."""
    azimuth, elevation = np.radians(azimuth), np.radians(elevation)
    return np.asarray(center, dtype=float) + radius * np.array(
        [
            np.cos(elevation) * np.sin(azimuth),
            -np.sin(elevation),
            -np.cos(elevation) * np.cos(azimuth),
        ]
    )


def arc_trajectory(
    center,
    radius: float,
    n: int,
    step: float,
    start: float = 0.0,
    elevation: float = 0.0,
    max_rotation: float = 180.0,
) -> Trajectory:
    """n cameras `step` degrees apart on a circle, all looking at `center`."""
    if n < 1:
        raise ValidationError("a trajectory needs at least one camera")
    if not radius > 0:
        raise ValidationError("orbit radius must be positive")
    center = np.asarray(center, dtype=float)
    poses = [
        geometry.look_at(orbit_eye(center, radius, start + i * step, elevation), center)
        for i in range(n)
    ]
    return Trajectory(poses, center, radius, step, max_rotation)


def orbit_trajectory(
    center, radius: float, n: int, elevation: float = 0.0, max_rotation: float = 180.0
) -> Trajectory:
    """n cameras evenly spaced over a full circle."""
    return arc_trajectory(
        center, radius, n, 360.0 / max(n, 1), elevation=elevation, max_rotation=max_rotation
    )

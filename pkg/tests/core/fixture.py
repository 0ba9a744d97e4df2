import numpy as np
from scipy.spatial.transform import Rotation
from voxfuse.core.models import Intrinsics, Pose, VoxelGridSpec

K = Intrinsics(fx=100.0, fy=100.0, cx=80.0, cy=60.0, width=160, height=120)
UNIT_K = Intrinsics(fx=1.0, fy=1.0, cx=0.0, cy=0.0, width=1, height=1)
SPEC = VoxelGridSpec(origin=(0.5, -1.0, 2.0), pitch=0.04, dims=(10, 10, 10))


def random_pose(rng: np.random.Generator, angle: float = 0.1, shift: float = 0.2) -> Pose:
    R = Rotation.from_rotvec(rng.normal(size=3) * angle).as_matrix()
    return Pose(R, rng.uniform(-shift, shift, size=3))

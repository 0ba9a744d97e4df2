import itertools
import numpy as np
from voxfuse.core.models import SceneVolume, VoxelGridSpec


def axis_rotations():
    """the 24 rotations mapping the coordinate axes onto each other."""
    rotations = []
    for permutation in itertools.permutations(range(3)):
        for signs in itertools.product((1.0, -1.0), repeat=3):
            R = np.zeros((3, 3))
            R[range(3), permutation] = signs
            if np.isclose(np.linalg.det(R), 1.0):
                rotations.append(R)
    return rotations


def rotate_voxels(data: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """resample a cubic C×n×n×n grid so that out(x) = data(c + Qᵀ(x − c))."""
    n = data.shape[-1]
    c = (n - 1) / 2.0
    index = np.indices((n, n, n)).reshape(3, -1).T
    source = np.rint((index - c) @ Q + c).astype(int)
    return data[:, source[:, 0], source[:, 1], source[:, 2]].reshape(data.shape)


def volume(data: np.ndarray, pitch: float = 0.04) -> SceneVolume:
    return SceneVolume(VoxelGridSpec(pitch=pitch, dims=data.shape[1:]), data)


Z_QUARTER = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])

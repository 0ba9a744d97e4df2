import unittest
import numpy as np
from scipy.spatial.transform import Rotation
from voxfuse import posedconv
from voxfuse.posedconv.kernel import discrete_samples, interp_samples, kernel_offsets
from voxfuse.core.units import RotationMethod
from voxfuse.core.errors import GeometryError, ValidationError
from voxfuse.core.models import ReservoirKernel
from tests.posedconv.fixture import axis_rotations, Z_QUARTER


class TestKernelCoordinates(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None

    def test_norm(self):
        self.assertListEqual(posedconv.norm((1, 1, 1), 3).tolist(), [0.0, 0.0, 0.0])
        self.assertListEqual(posedconv.norm((2, 1, 1), 3).tolist(), [1.0, 0.0, 0.0])
        self.assertTrue(np.allclose(posedconv.norm((2, 2, 2), 3), np.full(3, 1 / np.sqrt(3))))

    def test_norm_outside_the_kernel(self):
        with self.assertRaises(ValidationError):
            posedconv.norm((3, 0, 0), 3)
        with self.assertRaises(ValidationError):
            posedconv.norm((1, 1, 1), 4)

    def test_denorm(self):
        self.assertTrue(np.allclose(posedconv.denorm((2, 1, 1), 3, (0, 1, 0)), [1, 2, 1]))
        self.assertTrue(np.allclose(posedconv.denorm((1, 1, 1), 3, (0, 1, 0)), [1, 1, 1]))

    def test_denorm_inverts_norm(self):
        for w in (3, 5):
            for v in np.ndindex(w, w, w):
                restored = posedconv.denorm(v, w, posedconv.norm(v, w))
                self.assertTrue(np.allclose(restored, v, rtol=0, atol=1e-12))


class TestKernelRotation(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.rng = np.random.default_rng(11)
        self.kernel = posedconv.random_kernel(2, 3, w=3, seed=1)

    def test_random_kernel_is_seeded(self):
        self.assertTrue(
            np.array_equal(self.kernel.weights, posedconv.random_kernel(2, 3, w=3, seed=1).weights)
        )
        self.assertEqual(self.kernel.weights.shape, (2, 3, 3, 3, 3))

    def test_identity_rotation(self):
        for method in RotationMethod:
            rotated = posedconv.rotate_kernel(self.kernel, np.eye(3), method)
            self.assertTrue(np.array_equal(rotated.weights, self.kernel.weights))
            self.assertFalse(np.any(rotated.adjusted))

    def test_axis_rotations_permute_voxels(self):
        for w in (3, 5):
            kernel = posedconv.random_kernel(1, 2, w=w, seed=w)
            r = (w - 1) // 2
            for R_inv in axis_rotations():
                index = np.indices((w, w, w)).reshape(3, -1).T
                source = ((index - r) @ R_inv.T + r).astype(int)
                expected = kernel.weights[:, :, source[:, 0], source[:, 1], source[:, 2]].reshape(
                    kernel.weights.shape
                )
                for method in (RotationMethod.discrete, RotationMethod.interp):
                    rotated = posedconv.rotate_kernel(kernel, R_inv, method)
                    self.assertTrue(np.array_equal(rotated.weights, expected))

    def test_discrete_rotation_preserves_radius(self):
        w, r = 5, 2.0
        offsets = np.indices((w, w, w)).transpose(1, 2, 3, 0) - r
        lengths = np.linalg.norm(offsets, axis=-1)
        for R_inv in Rotation.random(1000, random_state=12).as_matrix():
            samples, _ = discrete_samples(w, R_inv)

            self.assertTrue(np.allclose(np.linalg.norm(samples - r, axis=-1), lengths, rtol=0, atol=1e-9))
            self.assertTrue(np.all((samples >= -1e-9) & (samples <= w - 1 + 1e-9)))

    def test_interp_clamps_corner_voxels(self):
        R_inv = Rotation.from_euler("z", 45, degrees=True).as_matrix()
        discrete, discrete_adjusted = discrete_samples(3, R_inv)
        interp, interp_adjusted = interp_samples(3, R_inv)
        voxel = (2, 2, 1)

        self.assertTrue(interp_adjusted[voxel])
        self.assertTrue(discrete_adjusted[voxel])
        self.assertAlmostEqual(np.linalg.norm(interp[voxel] - 1.0), 1.0)
        self.assertAlmostEqual(np.linalg.norm(discrete[voxel] - 1.0), np.sqrt(2.0))

    def test_rotation_then_inverse(self):
        back = posedconv.rotate_kernel_discrete(
            posedconv.rotate_kernel_discrete(self.kernel, Z_QUARTER), Z_QUARTER.T
        )
        self.assertTrue(np.array_equal(back.weights, self.kernel.weights))

        R = Rotation.random(random_state=13).as_matrix()
        back = posedconv.rotate_kernel_discrete(posedconv.rotate_kernel_discrete(self.kernel, R), R.T)
        self.assertTrue(np.allclose(back.weights[..., 1, 1, 1], self.kernel.weights[..., 1, 1, 1]))

    def test_axis_rotations_round_trip_exactly(self):
        for R in axis_rotations():
            back = posedconv.rotate_kernel_discrete(
                posedconv.rotate_kernel_discrete(self.kernel, R), R.T
            )
            self.assertTrue(np.array_equal(back.weights, self.kernel.weights))

    def test_quarter_turns_permute_face_centers(self):
        faces = [sign * axis for axis in np.eye(3, dtype=int) for sign in (1, -1)]
        for R_inv in axis_rotations():
            rotated = posedconv.rotate_kernel_discrete(self.kernel, R_inv).weights
            for face in faces:
                target = tuple(face + 1)
                source = tuple((R_inv @ face).astype(int) + 1)
                self.assertTrue(np.array_equal(rotated[(..., *target)], self.kernel.weights[(..., *source)]))

    def test_random_rotation_round_trip_stays_within_bounds(self):
        offsets = kernel_offsets(3)
        smooth = ReservoirKernel(
            (2.0 + 0.2 * offsets[..., 0] - 0.1 * offsets[..., 1] + 0.05 * offsets[..., 2])[None, None]
        )
        tolerance = 0.35 * np.abs(smooth.weights).max()
        lowest, highest = self.kernel.weights.min(), self.kernel.weights.max()

        for R in Rotation.random(20, random_state=14).as_matrix():
            back = posedconv.rotate_kernel_discrete(posedconv.rotate_kernel_discrete(smooth, R), R.T)
            self.assertLess(np.abs(back.weights - smooth.weights).max(), tolerance)
            self.assertAlmostEqual(back.weights[0, 0, 1, 1, 1], smooth.weights[0, 0, 1, 1, 1])

            back = posedconv.rotate_kernel_discrete(posedconv.rotate_kernel_discrete(self.kernel, R), R.T)
            self.assertTrue(np.all((back.weights >= lowest - 1e-12) & (back.weights <= highest + 1e-12)))

    def test_invalid_rotation(self):
        with self.assertRaises(GeometryError):
            posedconv.rotate_kernel(self.kernel, np.diag([1.0, 2.0, 1.0]))

    def test_kernel_cache(self):
        cache = posedconv.KernelCache(self.kernel)
        first = cache.get(Z_QUARTER)
        second = cache.get(Z_QUARTER.copy())
        cache.get(np.eye(3))

        self.assertIs(first, second)
        self.assertEqual(len(cache), 2)


if __name__ == "__main__":
    unittest.main()

import unittest
import numpy as np
from scipy.spatial.transform import Rotation
from voxfuse.core import geometry
from voxfuse.core.models import Intrinsics, Pose
from voxfuse.core.errors import GeometryError
from tests.core.fixture import K, random_pose


class TestPlaneHomography(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None

    def test_identity_pose(self):
        for z in (0.5, 1.0, 24.0):
            H = geometry.plane_homography(K, K, Pose.identity(), z)
            self.assertTrue(np.allclose(H, np.eye(3), rtol=0, atol=1e-12))

    def test_x_translation_shift(self):
        H = geometry.plane_homography(K, K, Pose(np.eye(3), [0.5, 0.0, 0.0]), 2.0)
        u, v = geometry.apply_homography(H, np.array(80.0), np.array(60.0))

        self.assertAlmostEqual(float(u), 80.0 + 100.0 * 0.5 / 2.0)
        self.assertAlmostEqual(float(v), 60.0)

    def test_warp_consistency(self):
        rng = np.random.default_rng(2)
        K_src = Intrinsics(fx=120.0, fy=110.0, cx=70.0, cy=50.0, width=160, height=120)
        for _ in range(50):
            pose = random_pose(rng)
            z = rng.uniform(1.0, 5.0)
            u, v = rng.uniform(0, 159), rng.uniform(0, 119)

            point = pose.apply(geometry.backproject(u, v, z, K))
            expected_u, expected_v, _ = geometry.project(point, K_src)
            H = geometry.plane_homography(K, K_src, pose, z)
            warped_u, warped_v = geometry.apply_homography(H, np.array(u), np.array(v))

            self.assertAlmostEqual(float(warped_u), expected_u, delta=1e-6)
            self.assertAlmostEqual(float(warped_v), expected_v, delta=1e-6)

    def test_infinite_plane_is_rotation_homography(self):
        R = Rotation.from_euler("xyz", [5, -10, 3], degrees=True).as_matrix()
        pose = Pose(R, [0.3, -0.1, 0.2])
        H = geometry.plane_homography(K, K, pose, 1e9)
        expected = K.matrix @ R @ K.inverse

        self.assertTrue(np.allclose(H, expected, rtol=1e-6, atol=0))

    def test_non_positive_plane_depth(self):
        with self.assertRaises(GeometryError):
            geometry.plane_homography(K, K, Pose.identity(), 0.0)

    def test_relative_pose(self):
        rng = np.random.default_rng(3)
        ref, src = random_pose(rng), random_pose(rng)
        points = rng.normal(size=(10, 3))

        relative = geometry.relative_pose(ref, src)
        expected = src.apply(ref.inverse().apply(points))

        self.assertTrue(np.allclose(relative.apply(points), expected, rtol=0, atol=1e-12))

    def test_sample_image(self):
        data = np.arange(12, dtype=float).reshape(1, 3, 4)
        samples, inside = geometry.sample_image(
            data, np.array([0.0, 1.5, 3.0, 3.5]), np.array([0.0, 1.0, 2.0, 0.0])
        )

        self.assertListEqual(inside.tolist(), [True, True, True, False])
        self.assertListEqual(samples[0].tolist(), [0.0, 5.5, 11.0, 0.0])


if __name__ == "__main__":
    unittest.main()

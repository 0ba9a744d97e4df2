import unittest
import numpy as np
from voxfuse import tsdf
from voxfuse.core.errors import ShapeMismatchError, ValidationError
from voxfuse.core.models import Camera, Intrinsics, Pose, VoxelGridSpec
from tests.tsdf.fixture import AXIS, CAMERA, GRID, TRUNCATION, wall, zero_crossing

SMALL_K = Intrinsics(fx=4.0, fy=4.0, cx=3.5, cy=3.5, width=8, height=8)
COLUMN = VoxelGridSpec(origin=(0.0, 0.0, 0.96), pitch=0.02, dims=(1, 1, 6))


class TestIntegration(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None

    def test_new_volume_is_unobserved(self):
        volume = tsdf.new_tsdf_volume(GRID, TRUNCATION)

        self.assertTrue(np.all(volume.values == 1.0))
        self.assertFalse(np.any(volume.observed))

    def test_invalid_truncation(self):
        with self.assertRaises(ValidationError):
            tsdf.new_tsdf_volume(GRID, 0.0)

    def test_wall_profile(self):
        volume = tsdf.integrate_depth(
            tsdf.new_tsdf_volume(COLUMN, 0.12), wall(1.0, (8, 8)), Camera(SMALL_K, Pose.identity())
        )

        self.assertTrue(
            np.allclose(volume.values[0, 0], [1 / 3, 1 / 6, 0.0, -1 / 6, -1 / 3, -0.5], atol=1e-9)
        )
        self.assertTrue(np.all(volume.weights == 1.0))

    def test_voxels_far_behind_the_surface_are_skipped(self):
        spec = VoxelGridSpec(origin=(0.0, 0.0, 1.2), pitch=0.02, dims=(1, 1, 1))
        volume = tsdf.integrate_depth(
            tsdf.new_tsdf_volume(spec, 0.12), wall(1.0, (8, 8)), Camera(SMALL_K, Pose.identity())
        )

        self.assertEqual(volume.weights[0, 0, 0], 0.0)
        self.assertEqual(volume.values[0, 0, 0], 1.0)

    def test_same_depth_twice(self):
        once = tsdf.integrate_depth(tsdf.new_tsdf_volume(GRID, TRUNCATION), wall(1.0), CAMERA)
        twice = tsdf.integrate_depth(once, wall(1.0), CAMERA)

        self.assertTrue(np.array_equal(twice.values, once.values))
        self.assertTrue(np.array_equal(twice.weights, 2.0 * once.weights))

    def test_integration_order(self):
        cams = [Camera(CAMERA.intrinsics, Pose(np.eye(3), [dx, 0.0, 0.0])) for dx in (0.0, 0.05, -0.05)]
        depths = [wall(z) for z in (0.95, 1.0, 1.05)]

        forward = tsdf.ground_truth_tsdf(depths, cams, GRID, TRUNCATION)
        backward = tsdf.ground_truth_tsdf(depths[::-1], cams[::-1], GRID, TRUNCATION)

        self.assertTrue(np.allclose(forward.values, backward.values, rtol=0, atol=1e-12))
        self.assertTrue(np.array_equal(forward.weights, backward.weights))

    def test_fused_wall_crossing(self):
        rng = np.random.default_rng(19)
        for z in rng.uniform(0.8, 1.2, 10):
            volume = tsdf.integrate_depth(tsdf.new_tsdf_volume(GRID, TRUNCATION), wall(z), CAMERA)
            crossing = zero_crossing(volume.values[AXIS, AXIS], GRID.origin[2], GRID.pitch)

            self.assertLessEqual(abs(crossing - z), GRID.pitch / 2)

    def test_resolution_mismatch(self):
        with self.assertRaises(ShapeMismatchError):
            tsdf.integrate_depth(tsdf.new_tsdf_volume(GRID, TRUNCATION), wall(1.0, (8, 8)), CAMERA)


if __name__ == "__main__":
    unittest.main()

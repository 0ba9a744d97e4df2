import unittest
import numpy as np
from voxfuse import metrics
from voxfuse.core.units import PointDistance
from voxfuse.core.errors import DataError
from voxfuse.core.models import TriangleMesh, TsdfVolume, VoxelGridSpec


class TestTsdfL1(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.spec = VoxelGridSpec(dims=(3, 1, 1))

    def test_mean_over_voxels_below_truncation(self):
        gt = TsdfVolume(self.spec, np.array([0.5, 1.0, -0.2]).reshape(3, 1, 1), np.ones((3, 1, 1)), 0.12)
        pred = TsdfVolume(self.spec, np.array([0.0, 0.0, 0.0]).reshape(3, 1, 1), np.ones((3, 1, 1)), 0.12)

        self.assertAlmostEqual(metrics.eval_tsdf_l1(pred, gt), 0.35)

    def test_unobserved_ground_truth(self):
        gt = TsdfVolume(self.spec, np.zeros((3, 1, 1)), np.zeros((3, 1, 1)), 0.12)

        with self.assertRaises(DataError):
            metrics.eval_tsdf_l1(gt, gt)


class TestPointCloudMetrics(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.rng = np.random.default_rng(22)

    def test_identical_clouds(self):
        points = self.rng.uniform(size=(50, 3))
        report = metrics.eval_pointcloud(points, points)

        self.assertEqual((report.acc, report.comp), (0.0, 0.0))
        self.assertEqual((report.precision, report.recall, report.f_score), (1.0, 1.0, 1.0))

    def test_single_pair(self):
        report = metrics.eval_pointcloud(np.zeros((1, 3)), np.array([[0.03, 0.0, 0.0]]))

        self.assertAlmostEqual(report.acc, 0.03)
        self.assertAlmostEqual(report.comp, 0.03)
        self.assertEqual(report.f_score, 1.0)

    def test_far_pair(self):
        report = metrics.eval_pointcloud(np.zeros((1, 3)), np.array([[0.06, 0.0, 0.0]]))

        self.assertEqual((report.precision, report.recall, report.f_score), (0.0, 0.0, 0.0))

    def test_l1_and_l2_distances(self):
        pred, gt = np.zeros((1, 3)), np.array([[0.03, 0.03, 0.0]])

        self.assertAlmostEqual(metrics.eval_pointcloud(pred, gt).acc, 0.06)
        self.assertAlmostEqual(metrics.eval_pointcloud(pred, gt, distance=PointDistance.l2).acc, 0.03 * np.sqrt(2))
        self.assertEqual(metrics.eval_pointcloud(pred, gt).f_score, 0.0)

    def test_brute_force_oracle(self):
        for _ in range(50):
            pred, gt = self.rng.uniform(size=(100, 3)), self.rng.uniform(size=(80, 3))
            report = metrics.eval_pointcloud(pred, gt, threshold=0.1)
            pairwise = np.abs(pred[:, None] - gt[None]).sum(axis=-1)

            self.assertAlmostEqual(report.acc, pairwise.min(axis=1).mean(), places=12)
            self.assertAlmostEqual(report.comp, pairwise.min(axis=0).mean(), places=12)
            self.assertAlmostEqual(report.precision, np.mean(pairwise.min(axis=1) < 0.1), places=12)

    def test_rigid_motion_invariance(self):
        pred, gt = self.rng.uniform(size=(60, 3)), self.rng.uniform(size=(60, 3))
        order, shift = [2, 0, 1], np.array([3.0, -1.0, 0.5])
        report = metrics.eval_pointcloud(pred, gt)
        moved = metrics.eval_pointcloud(pred[:, order] + shift, gt[:, order] + shift)

        self.assertAlmostEqual(report.acc, moved.acc)
        self.assertAlmostEqual(report.comp, moved.comp)
        self.assertAlmostEqual(report.f_score, moved.f_score)

    def test_empty_sets(self):
        with self.assertRaises(DataError):
            metrics.eval_pointcloud(np.zeros((0, 3)), np.zeros((3, 3)))
        with self.assertRaises(DataError):
            metrics.eval_mesh(TriangleMesh(), np.zeros((3, 3)))


if __name__ == "__main__":
    unittest.main()

import unittest
import numpy as np
from voxfuse import metrics
from voxfuse.core.units import RelativeDenominator
from voxfuse.core.errors import DataError, ShapeMismatchError
from voxfuse.core.models import DepthMap


class TestDepthMetrics(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None

    def test_perfect_prediction(self):
        depth = DepthMap(np.array([[1.0, 2.0], [3.0, 4.0]]))
        report = metrics.eval_depth(depth, depth)

        self.assertEqual((report.abs_rel, report.abs_diff, report.sq_rel, report.rmse), (0.0, 0.0, 0.0, 0.0))
        self.assertEqual(report.n, 4)

    def test_single_pixel(self):
        report = metrics.eval_depth(DepthMap(np.array([[2.0]])), DepthMap(np.array([[2.5]])))

        self.assertAlmostEqual(report.abs_rel, 0.25)
        self.assertAlmostEqual(report.abs_diff, 0.5)
        self.assertAlmostEqual(report.sq_rel, 0.125)
        self.assertAlmostEqual(report.rmse, 0.5)

    def test_ground_truth_denominator(self):
        report = metrics.eval_depth(
            DepthMap(np.array([[2.0]])), DepthMap(np.array([[2.5]])), RelativeDenominator.ground_truth
        )

        self.assertAlmostEqual(report.abs_rel, 0.2)
        self.assertAlmostEqual(report.sq_rel, 0.1)

    def test_only_joint_pixels_count(self):
        pred = DepthMap(np.array([[1.0, np.nan, 3.0]]))
        gt = DepthMap(np.array([[1.5, 2.0, np.nan]]))
        report = metrics.eval_depth(pred, gt)

        self.assertEqual(report.n, 1)
        self.assertAlmostEqual(report.abs_diff, 0.5)

    def test_no_joint_pixels(self):
        with self.assertRaises(DataError):
            metrics.eval_depth(DepthMap(np.array([[1.0, np.nan]])), DepthMap(np.array([[np.nan, 1.0]])))

    def test_resolution_mismatch(self):
        with self.assertRaises(ShapeMismatchError):
            metrics.eval_depth(DepthMap(np.ones((2, 2))), DepthMap(np.ones((2, 3))))


if __name__ == "__main__":
    unittest.main()

import unittest
from voxfuse import metrics
from voxfuse.core.models import DepthEvalReport, GeomEvalReport

DEPTH = DepthEvalReport(abs_rel=0.25, abs_diff=0.5, sq_rel=0.125, rmse=0.5, n=4)
GEOMETRY = GeomEvalReport(acc=0.01, comp=0.02, precision=1.0, recall=0.5, f_score=2 / 3, l1=0.1)


class TestReports(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None

    def test_key_values(self):
        self.assertEqual(metrics.render_keyvalues(DEPTH, GEOMETRY), KEYVALUES)

    def test_depth_only(self):
        self.assertEqual(
            metrics.render_keyvalues(DEPTH),
            "abs_rel=0.250000\nabs_diff=0.500000\nsq_rel=0.125000\nrmse=0.500000\nn=4\n",
        )

    def test_table(self):
        self.assertEqual(
            metrics.render_table([("before", DEPTH, None), ("after", DEPTH, GEOMETRY)]), TABLE
        )


if __name__ == "__main__":
    unittest.main()


KEYVALUES = """abs_rel=0.250000
abs_diff=0.500000
sq_rel=0.125000
rmse=0.500000
n=4
l1=0.100000
acc=0.010000
comp=0.020000
precision=1.000000
recall=0.500000
f_score=0.666667
"""

TABLE = """| Method | AbsRel | AbsDiff | SqRel | RMSE | L1 | Acc | Comp | F-score |
| --- | --- | --- | --- | --- | --- | --- | --- | --- |
| before | 0.250000 | 0.500000 | 0.125000 | 0.500000 | nan | nan | nan | nan |
| after | 0.250000 | 0.500000 | 0.125000 | 0.500000 | 0.100000 | 0.010000 | 0.020000 | 0.666667 |
"""

import os
import shutil
import tempfile
import unittest
import numpy as np
from voxfuse.pipeline import load_dataset
from voxfuse.synthetic import build_dataset
from voxfuse.core.errors import DataError
from tests.pipeline.fixture import K, wall_dataset


class TestDataset(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.folder = tempfile.TemporaryDirectory()
        self.root = wall_dataset(os.path.join(self.folder.name, "wall"), frames=3)

    def tearDown(self):
        self.folder.cleanup()

    def test_load(self):
        ds = load_dataset(self.root)

        self.assertEqual(len(ds), 3)
        self.assertTrue(ds.has_ground_truth)
        self.assertEqual(ds.intrinsics, K)
        self.assertEqual(ds.image(0).shape, (120, 160))
        self.assertTrue(np.allclose(ds.pose(0).center, [-0.4, 0.0, 0.0]))
        self.assertTrue(np.allclose(ds.pose(2).camera_from_world().t, [-0.4, 0.0, 0.0]))
        self.assertEqual(len(ds.scene().primitives), 1)

    def test_ground_truth_depth(self):
        ds = load_dataset(self.root)
        depth = ds.depth(1)
        resized = ds.depth(1, (60, 80))

        self.assertTrue(np.allclose(depth.data, 2.0))
        self.assertEqual(resized.shape, (60, 80))
        self.assertTrue(np.allclose(resized.data, 2.0))

    def test_downsampled_camera(self):
        camera = load_dataset(self.root).camera(0, 2)

        self.assertEqual(camera.intrinsics.shape, (60, 80))
        self.assertEqual(camera.intrinsics.fx, 50.0)
        self.assertEqual(camera.intrinsics.cx, 39.5)

    def test_missing_pose(self):
        os.remove(os.path.join(self.root, "pose", "000001.txt"))

        with self.assertRaises(DataError):
            load_dataset(self.root)

    def test_sparse_frame_ids(self):
        shutil.move(
            os.path.join(self.root, "color", "000002.png"),
            os.path.join(self.root, "color", "000005.png"),
        )

        with self.assertRaises(DataError):
            load_dataset(self.root)

    def test_missing_ground_truth(self):
        shutil.rmtree(os.path.join(self.root, "depth"))
        ds = load_dataset(self.root)

        self.assertFalse(ds.has_ground_truth)
        with self.assertRaises(DataError):
            ds.depth(0)

    def test_missing_color_directory(self):
        with self.assertRaises(DataError):
            load_dataset(os.path.join(self.folder.name, "missing"))

    def test_build_from_description(self):
        root = build_dataset(os.path.join(self.folder.name, "sphere"), SPHERE)
        ds = load_dataset(root)

        self.assertEqual(len(ds), 3)
        self.assertTrue(ds.depth(0).valid[30, 40])
        self.assertAlmostEqual(ds.depth(0).data[30, 40], 1.5, places=3)


if __name__ == "__main__":
    unittest.main()


SPHERE = {
    "primitives": [{"type": "sphere", "center": [0.0, 0.0, 0.0], "radius": 0.5}],
    "trajectory": {"center": [0.0, 0.0, 0.0], "radius": 2.0, "n": 3, "step": 10.0},
    "intrinsics": {"fx": 75.0, "fy": 75.0, "cx": 40.0, "cy": 30.0, "width": 80, "height": 60},
}

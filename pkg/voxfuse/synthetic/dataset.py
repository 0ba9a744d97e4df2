"""Synthetic datasets in the color/depth/pose directory layout."""
import os
import logging
from typing import List
from voxfuse.core.models import Camera, Intrinsics, Pose
from voxfuse.core.utils import Serializable, jsonify
from voxfuse.core.utils.formats import (
    write_artifact,
    image_to_png,
    depth_to_png,
    pose_to_text,
    intrinsics_to_text,
)
from voxfuse.core.errors import ValidationError
from voxfuse.synthetic.scene import Scene, dump_scene, load_scene, render
from voxfuse.synthetic.trajectory import arc_trajectory

logger = logging.getLogger(__name__)

FRAME = "{:06d}"


def frame_paths(root: str, index: int) -> dict:
    name = FRAME.format(index)
    return dict(
        color=os.path.join(root, "color", f"{name}.png"),
        depth=os.path.join(root, "depth", f"{name}.png"),
        pose=os.path.join(root, "pose", f"{name}.txt"),
    )


def write_dataset(root: str, scene: Scene, poses: List[Pose], K: Intrinsics) -> str:
    """render every pose and write images, 16-bit depths, poses and intrinsics."""
    for index, pose in enumerate(poses):
        intensity, depth = render(scene, Camera(K, pose))
        paths = frame_paths(root, index)
        write_artifact(paths["color"], Serializable(intensity, image_to_png))
        write_artifact(paths["depth"], Serializable(depth, depth_to_png))
        write_artifact(paths["pose"], Serializable(pose, pose_to_text))

    write_artifact(os.path.join(root, "intrinsics.txt"), Serializable(K, intrinsics_to_text))
    write_artifact(
        os.path.join(root, "scene.json"),
        Serializable(dump_scene(scene), jsonify),
    )
    logger.info(f"synthetic dataset with {len(poses)} frames written to {root}")
    return root


def build_dataset(root: str, description: dict) -> str:
    """dataset from a scene description carrying `trajectory` and `intrinsics` entries."""
    if "trajectory" not in description or "intrinsics" not in description:
        raise ValidationError("scene descriptions need a trajectory and intrinsics")
    scene = load_scene(description)
    trajectory = arc_trajectory(**description["trajectory"])
    return write_dataset(root, scene, trajectory.poses, Intrinsics(**description["intrinsics"]))

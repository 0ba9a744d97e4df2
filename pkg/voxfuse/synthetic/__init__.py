from voxfuse.synthetic.scene import (
    Plane,
    Box,
    Sphere,
    Scene,
    load_scene,
    dump_scene,
    render,
    analytic_tsdf,
    sample_points,
)
from voxfuse.synthetic.trajectory import Trajectory, orbit_trajectory, arc_trajectory
from voxfuse.synthetic.dataset import write_dataset, build_dataset, frame_paths
from voxfuse.synthetic.presets import PRESETS

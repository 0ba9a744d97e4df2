from voxfuse.metrics.depth import eval_depth
from voxfuse.metrics.geometry import eval_tsdf_l1, eval_pointcloud, eval_mesh, nearest_distances
from voxfuse.metrics.report import render_table, render_keyvalues

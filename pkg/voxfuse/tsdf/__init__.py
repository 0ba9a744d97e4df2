from voxfuse.tsdf.integrate import new_tsdf_volume, integrate_depth, ground_truth_tsdf
from voxfuse.tsdf.losses import tsdf_loss, tsdf_loss_grad, total_loss
from voxfuse.tsdf.mesh import extract_mesh
from voxfuse.tsdf.render import render_depth

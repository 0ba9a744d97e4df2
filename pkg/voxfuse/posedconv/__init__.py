from voxfuse.posedconv.kernel import (
    norm,
    denorm,
    kernel_offsets,
    rotate_kernel,
    rotate_kernel_discrete,
    rotate_kernel_interp,
    random_kernel,
    KernelCache,
)
from voxfuse.posedconv.conv import conv3d, posed_conv3d, average_posed_volumes

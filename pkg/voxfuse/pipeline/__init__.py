from voxfuse.pipeline.dataset import Dataset, Frame, load_dataset
from voxfuse.pipeline.stages import (
    run_stage1,
    run_stage2,
    run_eval,
    run,
    load_stage1,
    reservoir_kernel,
)
from voxfuse.pipeline.interface import Sweep, Fusion, Evaluation, Reconstruction

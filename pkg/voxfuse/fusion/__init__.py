from voxfuse.fusion.volume import (
    backproject_features,
    view_occupancy,
    embed_depth_occupancy,
    build_unified_volume,
    split_unified_volume,
)

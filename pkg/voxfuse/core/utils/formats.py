"""VoxFuse artifact codecs.

Every artifact is written through a `Serializable` and read back through a
`Deserializable` so the byte level encoding stays in this module.
"""
import io
import os
import struct
import logging
import numpy as np
from PIL import Image
from plyfile import PlyData, PlyElement, PlyParseError
from typing import Callable, Tuple, TypeVar
from voxfuse.core.utils.serializable import Serializable, Deserializable
from voxfuse.core.errors import DataError
from voxfuse.core.geometry import orthonormalize
from voxfuse.core.units import OverlapLabel, PoseConvention, Distance, DistanceUnit
from voxfuse.core.models import (
    DepthMap,
    Intrinsics,
    OverlapMask,
    Pose,
    ReservoirKernel,
    SceneVolume,
    TriangleMesh,
    TsdfVolume,
    VoxelGridSpec,
)

logger = logging.getLogger(__name__)
T = TypeVar("T")

VERSION = 1
RASTER_MAGIC = b"VXFD"
VOLUME_MAGIC = b"VXFV"
KERNEL_MAGIC = 0x4B465856  # "VXFK" little endian
RASTER_HEADER = struct.Struct("<4s3i")
VOLUME_HEADER = struct.Struct("<4s5i")
VOLUME_GRID = struct.Struct("<4d")
TSDF_TRAILER = struct.Struct("<d")
KERNEL_HEADER = struct.Struct("<8i")
PLY_VERTEX = np.dtype([("x", "<f4"), ("y", "<f4"), ("z", "<f4")])
PLY_FACE = np.dtype([("vertex_indices", "<u4", (3,))])
MAX_DEPTH_MM = np.iinfo(np.uint16).max


""" Artifact IO """


def write_artifact(path: str, artifact: Serializable) -> str:
    content = artifact.serialize()
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    mode = "wb" if isinstance(content, bytes) else "w"
    with open(path, mode) as f:
        f.write(content)
    logger.info(f"artifact written: {path}")
    return path


def read_artifact(path: str, deserializer: Callable[[bytes], T]) -> T:
    if not os.path.isfile(path):
        raise DataError(f"missing file {path}", details=dict(path=path))
    with open(path, "rb") as f:
        content = f.read()
    try:
        return Deserializable(content, deserializer).deserialize()
    except DataError as error:
        error.details = {**(error.details or {}), "path": path}
        raise


def _unpack(layout: struct.Struct, content: bytes, offset: int = 0) -> tuple:
    try:
        return layout.unpack_from(content, offset)
    except struct.error as e:
        raise DataError("truncated header") from e


def _payload(content: bytes, offset: int, count: int, dtype: str) -> np.ndarray:
    size = count * np.dtype(dtype).itemsize
    if len(content) < offset + size:
        raise DataError("truncated payload", details=dict(expected=size, received=len(content) - offset))
    return np.frombuffer(content, dtype=dtype, count=count, offset=offset)


def _check(magic: bytes, expected: bytes, version: int):
    if magic != expected:
        raise DataError(f"corrupted header: bad magic {magic!r}")
    if version != VERSION:
        raise DataError(f"unsupported version {version}")


""" Images """


def depth_to_png(depth: DepthMap) -> bytes:
    """16-bit PNG in millimeters, 0 marks invalid pixels."""
    mm = np.where(depth.valid, np.rint(Distance(np.nan_to_num(depth.data), DistanceUnit.M).MM), 0)
    buffer = io.BytesIO()
    Image.fromarray(np.clip(mm, 0, MAX_DEPTH_MM).astype(np.uint16)).save(buffer, format="PNG")
    return buffer.getvalue()


def png_to_depth(content: bytes) -> DepthMap:
    mm = _open_image(content).astype(float)
    return DepthMap(Distance(mm, DistanceUnit.MM).M, valid=mm > 0)


def mask_to_png(mask: OverlapMask) -> bytes:
    labels = np.where(
        mask.data >= 0.5, OverlapLabel.overlap.value, OverlapLabel.non_overlap.value
    )
    labels = np.where(mask.known, labels, OverlapLabel.unknown.value)
    buffer = io.BytesIO()
    Image.fromarray(labels.astype(np.uint8)).save(buffer, format="PNG")
    return buffer.getvalue()


def png_to_mask(content: bytes) -> OverlapMask:
    labels = _open_image(content)
    return OverlapMask(
        (labels == OverlapLabel.overlap.value).astype(float),
        known=labels != OverlapLabel.unknown.value,
    )


def image_to_png(intensity: np.ndarray) -> bytes:
    """8-bit grayscale PNG from an intensity image in [0, 1]."""
    pixels = np.rint(np.clip(intensity, 0.0, 1.0) * 255.0).astype(np.uint8)
    buffer = io.BytesIO()
    Image.fromarray(pixels).save(buffer, format="PNG")
    return buffer.getvalue()


def png_to_image(content: bytes) -> np.ndarray:
    try:
        image = Image.open(io.BytesIO(content)).convert("L")
    except OSError as e:
        raise DataError("unreadable image") from e
    return np.asarray(image, dtype=float) / 255.0


def _open_image(content: bytes) -> np.ndarray:
    try:
        return np.array(Image.open(io.BytesIO(content)))
    except OSError as e:
        raise DataError("unreadable image") from e


""" Float raster """


def raster_to_bytes(depth: DepthMap) -> bytes:
    height, width = depth.shape
    data = depth.values.astype("<f4")
    return RASTER_HEADER.pack(RASTER_MAGIC, VERSION, height, width) + data.tobytes()


def bytes_to_raster(content: bytes) -> DepthMap:
    magic, version, height, width = _unpack(RASTER_HEADER, content)
    _check(magic, RASTER_MAGIC, version)
    data = _payload(content, RASTER_HEADER.size, height * width, "<f4")
    values = data.reshape(height, width).astype(float)
    return DepthMap(values, valid=np.isfinite(values))


""" Volumes """


def _volume_bytes(spec: VoxelGridSpec, data: np.ndarray) -> bytes:
    header = VOLUME_HEADER.pack(VOLUME_MAGIC, VERSION, data.shape[0], *spec.dims)
    grid = VOLUME_GRID.pack(*spec.origin, spec.pitch)
    return header + grid + np.ascontiguousarray(data, dtype="<f4").tobytes()


def _bytes_volume(content: bytes) -> Tuple[VoxelGridSpec, np.ndarray, int]:
    magic, version, channels, *dims = _unpack(VOLUME_HEADER, content)
    _check(magic, VOLUME_MAGIC, version)
    *origin, pitch = _unpack(VOLUME_GRID, content, VOLUME_HEADER.size)
    if channels < 1 or min(dims) < 1 or not pitch > 0:
        raise DataError("corrupted header: invalid volume dimensions")

    offset = VOLUME_HEADER.size + VOLUME_GRID.size
    count = channels * int(np.prod(dims))
    data = _payload(content, offset, count, "<f4").reshape(channels, *dims)
    spec = VoxelGridSpec(origin=origin, pitch=pitch, dims=dims)
    return spec, data.astype(np.float32), offset + count * 4


def volume_to_bytes(volume: SceneVolume) -> bytes:
    return _volume_bytes(volume.spec, volume.data)


def bytes_to_volume(content: bytes) -> SceneVolume:
    spec, data, _ = _bytes_volume(content)
    return SceneVolume(spec, data)


def tsdf_to_bytes(volume: TsdfVolume) -> bytes:
    data = np.stack([volume.values, volume.weights])
    return _volume_bytes(volume.spec, data) + TSDF_TRAILER.pack(volume.truncation)


def bytes_to_tsdf(content: bytes) -> TsdfVolume:
    spec, data, end = _bytes_volume(content)
    if data.shape[0] != 2:
        raise DataError("corrupted header: tsdf volumes carry 2 channels")
    (truncation,) = _unpack(TSDF_TRAILER, content, end)
    return TsdfVolume(spec, data[0].astype(float), data[1].astype(float), truncation)


""" Kernels """


def kernel_to_bytes(kernel: ReservoirKernel) -> bytes:
    header = KERNEL_HEADER.pack(
        KERNEL_MAGIC, VERSION, kernel.out_channels, kernel.in_channels, kernel.size, 0, 0, 0
    )
    return header + np.ascontiguousarray(kernel.weights, dtype="<f4").tobytes()


def bytes_to_kernel(content: bytes) -> ReservoirKernel:
    magic, version, c_out, c_in, w, *_ = _unpack(KERNEL_HEADER, content)
    if magic != KERNEL_MAGIC:
        raise DataError("corrupted header: bad kernel magic")
    if version != VERSION:
        raise DataError(f"unsupported version {version}")
    if min(c_out, c_in, w) < 1:
        raise DataError("corrupted header: invalid kernel dimensions")
    data = _payload(content, KERNEL_HEADER.size, c_out * c_in * w ** 3, "<f4")
    return ReservoirKernel(data.reshape(c_out, c_in, w, w, w).astype(float))


""" Meshes """


def mesh_to_ply(mesh: TriangleMesh) -> bytes:
    """binary little endian PLY: float xyz vertices, uchar/uint triangle lists."""
    vertices = np.zeros(len(mesh.vertices), dtype=PLY_VERTEX)
    for axis, name in enumerate("xyz"):
        vertices[name] = mesh.vertices[:, axis]
    faces = np.zeros(len(mesh.faces), dtype=PLY_FACE)
    faces["vertex_indices"] = mesh.faces

    ply = PlyData(
        [
            PlyElement.describe(vertices, "vertex"),
            PlyElement.describe(
                faces,
                "face",
                len_types={"vertex_indices": "u1"},
                val_types={"vertex_indices": "u4"},
            ),
        ],
        byte_order="<",
    )
    output = io.BytesIO()
    ply.write(output)
    return output.getvalue()


def ply_to_mesh(content: bytes) -> TriangleMesh:
    try:
        ply = PlyData.read(io.BytesIO(content))
        vertex = ply["vertex"].data if "vertex" in ply else np.zeros(0, dtype=PLY_VERTEX)
        faces = list(ply["face"].data["vertex_indices"]) if "face" in ply else []
    except PlyParseError as e:
        raise DataError(f"corrupted ply: {e}") from e
    except (ValueError, KeyError, EOFError) as e:
        raise DataError(f"truncated or malformed ply payload: {e}") from e

    if any(len(face) != 3 for face in faces):
        raise DataError("only triangle faces are supported")
    vertices = np.stack([vertex[name] for name in "xyz"], axis=-1).astype(float)
    indices = np.array(faces, dtype=np.int64).reshape(-1, 3)

    return TriangleMesh(vertices.reshape(-1, 3), indices)


""" Camera text files """


def pose_to_text(pose: Pose) -> str:
    matrix = pose.world_from_camera().matrix
    return "\n".join(" ".join(f"{v:.17g}" for v in row) for row in matrix) + "\n"


def text_to_pose(content: bytes) -> Pose:
    """camera-to-world 4×4 text matrix, rotation re-orthonormalised."""
    try:
        matrix = np.array([float(v) for v in content.split()]).reshape(4, 4)
    except ValueError as e:
        raise DataError("pose files hold a 4×4 matrix") from e
    if not np.all(np.isfinite(matrix)):
        raise DataError("pose contains non finite values")
    return Pose(orthonormalize(matrix[:3, :3]), matrix[:3, 3], PoseConvention.world_from_camera)


def intrinsics_to_text(K: Intrinsics) -> str:
    return f"{K.fx:.17g} {K.fy:.17g} {K.cx:.17g} {K.cy:.17g} {K.width} {K.height}\n"


def text_to_intrinsics(content: bytes) -> Intrinsics:
    fields = content.split()
    if len(fields) != 6:
        raise DataError("intrinsics files hold: fx fy cx cy width height")
    try:
        fx, fy, cx, cy = (float(v) for v in fields[:4])
        width, height = (int(v) for v in fields[4:])
    except ValueError as e:
        raise DataError("invalid intrinsics values") from e
    return Intrinsics(fx, fy, cx, cy, width, height)


""" Shortcuts """


def save_depth(path: str, depth: DepthMap) -> str:
    """write a depth map as PNG (`.png`) or float raster (any other suffix)."""
    serializer = depth_to_png if path.endswith(".png") else raster_to_bytes
    return write_artifact(path, Serializable(depth, serializer))


def load_depth(path: str) -> DepthMap:
    deserializer = png_to_depth if path.endswith(".png") else bytes_to_raster
    return read_artifact(path, deserializer)


def save_mask(path: str, mask: OverlapMask) -> str:
    return write_artifact(path, Serializable(mask, mask_to_png))


def load_mask(path: str) -> OverlapMask:
    return read_artifact(path, png_to_mask)


def save_volume(path: str, volume: SceneVolume) -> str:
    return write_artifact(path, Serializable(volume, volume_to_bytes))


def load_volume(path: str) -> SceneVolume:
    return read_artifact(path, bytes_to_volume)


def save_tsdf(path: str, volume: TsdfVolume) -> str:
    return write_artifact(path, Serializable(volume, tsdf_to_bytes))


def load_tsdf(path: str) -> TsdfVolume:
    return read_artifact(path, bytes_to_tsdf)


def save_kernel(path: str, kernel: ReservoirKernel) -> str:
    return write_artifact(path, Serializable(kernel, kernel_to_bytes))


def load_kernel(path: str) -> ReservoirKernel:
    return read_artifact(path, bytes_to_kernel)


def save_mesh(path: str, mesh: TriangleMesh) -> str:
    return write_artifact(path, Serializable(mesh, mesh_to_ply))


def load_mesh(path: str) -> TriangleMesh:
    return read_artifact(path, ply_to_mesh)

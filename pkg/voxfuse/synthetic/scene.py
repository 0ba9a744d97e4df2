"""Analytic scenes: primitives, closed-form ray casting and signed distances."""
import attr
import logging
import numpy as np
from typing import List, Tuple, Union
from voxfuse.core import geometry
from voxfuse.core.units import PrimitiveType
from voxfuse.core.errors import ValidationError
from voxfuse.core.models import Camera, DepthMap, TsdfVolume, VoxelGridSpec

logger = logging.getLogger(__name__)

LIGHT = np.array([0.3, -0.8, -0.5]) / np.linalg.norm([0.3, -0.8, -0.5])
AMBIENT = 0.35
NOISE_SCALES = ((0.08, 0.6), (0.03, 0.4))
BOUNDS_TOLERANCE = 1e-9


def _vector(value) -> np.ndarray:
    return np.asarray(value, dtype=float).reshape(3)


def _unit(value) -> np.ndarray:
    vector = _vector(value)
    length = np.linalg.norm(vector)
    if length == 0:
        raise ValidationError("normal must not be zero")
    return vector / length


""" Primitives """


@attr.s(auto_attribs=True, frozen=True, eq=False)
class Plane:
    point: np.ndarray = attr.ib(converter=_vector)
    normal: np.ndarray = attr.ib(converter=_unit)
    texture: int = 0
    type = PrimitiveType.plane

    def intersect(self, origin: np.ndarray, directions: np.ndarray) -> np.ndarray:
        denominator = directions @ self.normal
        with np.errstate(divide="ignore", invalid="ignore"):
            t = ((self.point - origin) @ self.normal) / denominator
        return np.where((denominator != 0) & (t > 0), t, np.inf)

    def sdf(self, points: np.ndarray) -> np.ndarray:
        """signed distance, positive on the normal side."""
        return (points - self.point) @ self.normal

    def normals(self, points: np.ndarray) -> np.ndarray:
        return np.broadcast_to(self.normal, points.shape)


@attr.s(auto_attribs=True, frozen=True, eq=False)
class Box:
    min: np.ndarray = attr.ib(converter=_vector)
    max: np.ndarray = attr.ib(converter=_vector)
    texture: int = 0
    type = PrimitiveType.box

    def __attrs_post_init__(self):
        if np.any(self.max <= self.min):
            raise ValidationError("box max corner must exceed its min corner")

    @property
    def center(self) -> np.ndarray:
        return (self.min + self.max) / 2.0

    @property
    def half(self) -> np.ndarray:
        return (self.max - self.min) / 2.0

    def intersect(self, origin: np.ndarray, directions: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            t0 = (self.min - origin) / directions
            t1 = (self.max - origin) / directions
        parallel = directions == 0
        inside = (origin >= self.min) & (origin <= self.max)
        t0 = np.where(parallel, np.where(inside, -np.inf, np.inf), t0)
        t1 = np.where(parallel, np.where(inside, np.inf, -np.inf), t1)
        near = np.max(np.minimum(t0, t1), axis=-1)
        far = np.min(np.maximum(t0, t1), axis=-1)
        t = np.where(near > 0, near, far)
        return np.where((far >= near) & (t > 0), t, np.inf)

    def sdf(self, points: np.ndarray) -> np.ndarray:
        q = np.abs(points - self.center) - self.half
        outside = np.linalg.norm(np.maximum(q, 0.0), axis=-1)
        inside = np.minimum(q.max(axis=-1), 0.0)
        return outside + inside

    def normals(self, points: np.ndarray) -> np.ndarray:
        local = (points - self.center) / self.half
        axis = np.abs(local).argmax(axis=-1)
        normals = np.zeros(points.shape)
        np.put_along_axis(
            normals, axis[..., None], np.sign(np.take_along_axis(local, axis[..., None], -1)), -1
        )
        return normals


@attr.s(auto_attribs=True, frozen=True, eq=False)
class Sphere:
    center: np.ndarray = attr.ib(converter=_vector)
    radius: float = 0.5
    texture: int = 0
    type = PrimitiveType.sphere

    def __attrs_post_init__(self):
        if not self.radius > 0:
            raise ValidationError("sphere radius must be positive")

    def intersect(self, origin: np.ndarray, directions: np.ndarray) -> np.ndarray:
        offset = origin - self.center
        a = np.einsum("...i,...i", directions, directions)
        b = directions @ offset
        c = offset @ offset - self.radius ** 2
        discriminant = b ** 2 - a * c
        root = np.sqrt(np.maximum(discriminant, 0.0))
        near, far = (-b - root) / a, (-b + root) / a
        t = np.where(near > 0, near, far)
        return np.where((discriminant >= 0) & (t > 0), t, np.inf)

    def sdf(self, points: np.ndarray) -> np.ndarray:
        return np.linalg.norm(points - self.center, axis=-1) - self.radius

    def normals(self, points: np.ndarray) -> np.ndarray:
        return (points - self.center) / self.radius


Primitive = Union[Plane, Box, Sphere]
PRIMITIVES = {PrimitiveType.plane: Plane, PrimitiveType.box: Box, PrimitiveType.sphere: Sphere}


@attr.s(auto_attribs=True, frozen=True, eq=False)
class Scene:
    """union of primitives inside an axis-aligned world box (min, max)."""

    primitives: List[Primitive]
    bounds: Tuple[np.ndarray, np.ndarray] = None

    def __attrs_post_init__(self):
        if len(self.primitives) == 0:
            raise ValidationError("a scene needs at least one primitive")
        if self.bounds is None:
            object.__setattr__(self, "bounds", _enclosing_bounds(self.primitives))
        lower, upper = (_vector(b) for b in self.bounds)
        object.__setattr__(self, "bounds", (lower, upper))
        for primitive in self.primitives:
            low, high = _extent(primitive)
            if np.any(low < lower - BOUNDS_TOLERANCE) or np.any(high > upper + BOUNDS_TOLERANCE):
                raise ValidationError(f"{primitive.type.value} outside the scene bounds")

    def sdf(self, points: np.ndarray) -> np.ndarray:
        return np.min([primitive.sdf(points) for primitive in self.primitives], axis=0)


def _extent(primitive: Primitive) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(primitive, Sphere):
        return primitive.center - primitive.radius, primitive.center + primitive.radius
    if isinstance(primitive, Box):
        return primitive.min, primitive.max
    return primitive.point, primitive.point


def _enclosing_bounds(primitives: List[Primitive]) -> Tuple[np.ndarray, np.ndarray]:
    extents = [_extent(p) for p in primitives]
    return (
        np.min([low for low, _ in extents], axis=0),
        np.max([high for _, high in extents], axis=0),
    )


def load_scene(description: dict) -> Scene:
    """Scene from a dict such as {"primitives": [{"type": "sphere", ...}], "bounds": [...]}."""
    primitives = []
    for item in description.get("primitives", []):
        item = dict(item)
        kind = item.pop("type", None)
        if kind not in PrimitiveType._value2member_map_:
            raise ValidationError(f"unknown primitive type {kind!r}")
        primitives.append(PRIMITIVES[PrimitiveType(kind)](**item))
    return Scene(primitives, bounds=description.get("bounds"))


def dump_scene(scene: Scene) -> dict:
    def describe(primitive: Primitive) -> dict:
        fields = {
            a.name: getattr(primitive, a.name) for a in attr.fields(type(primitive))
        }
        return {
            "type": primitive.type.value,
            **{
                k: v.tolist() if isinstance(v, np.ndarray) else v
                for k, v in fields.items()
            },
        }

    return {
        "primitives": [describe(p) for p in scene.primitives],
        "bounds": [b.tolist() for b in scene.bounds],
    }


""" Rendering """


def _hash(ix: np.ndarray, iy: np.ndarray, iz: np.ndarray, seed: int) -> np.ndarray:
    h = (
        ix.astype(np.uint64) * np.uint64(73856093)
        ^ iy.astype(np.uint64) * np.uint64(19349663)
        ^ iz.astype(np.uint64) * np.uint64(83492791)
        ^ np.uint64(seed) * np.uint64(2654435761)
    )
    h = (h ^ (h >> np.uint64(13))) * np.uint64(1274126177)
    h = h ^ (h >> np.uint64(16))
    return (h & np.uint64(0xFFFFFF)).astype(float) / float(0xFFFFFF)


def value_noise(points: np.ndarray, scale: float, seed: int = 0) -> np.ndarray:
    """smooth lattice noise in [0, 1] hashed from world positions."""
    p = points / scale
    base = np.floor(p)
    f = p - base
    f = f * f * (3.0 - 2.0 * f)
    base = base.astype(np.int64)
    noise = np.zeros(points.shape[:-1])
    for corner in np.ndindex(2, 2, 2):
        index = base + np.array(corner)
        weight = np.prod(np.where(np.array(corner) == 1, f, 1.0 - f), axis=-1)
        noise += weight * _hash(index[..., 0], index[..., 1], index[..., 2], seed)
    return noise


def albedo(points: np.ndarray, texture: int) -> np.ndarray:
    return sum(
        weight * value_noise(points, scale, seed=texture * 7 + octave)
        for octave, (scale, weight) in enumerate(NOISE_SCALES)
    )


def render(scene: Scene, cam: Camera) -> Tuple[np.ndarray, DepthMap]:
    """Return the intensity image in [0, 1] and the camera depth of the nearest hit."""
    K = cam.intrinsics
    u, v = geometry.pixel_grid(*K.shape)
    rays = np.stack([(u - K.cx) / K.fx, (v - K.cy) / K.fy, np.ones_like(u)], axis=-1)
    world_from_camera = cam.pose.world_from_camera()
    directions = rays @ world_from_camera.R.T
    origin = world_from_camera.t

    hits = np.stack([p.intersect(origin, directions) for p in scene.primitives])
    nearest = hits.argmin(axis=0)
    depth = hits.min(axis=0)
    valid = np.isfinite(depth)

    points = origin + np.where(valid, depth, 0.0)[..., None] * directions
    intensity = np.zeros(K.shape)
    for index, primitive in enumerate(scene.primitives):
        selected = valid & (nearest == index)
        if not np.any(selected):
            continue
        hit = points[selected]
        shading = AMBIENT + (1.0 - AMBIENT) * np.abs(primitive.normals(hit) @ LIGHT)
        intensity[selected] = albedo(hit, primitive.texture) * shading

    logger.debug(f"rendered {int(valid.sum())} hit pixels")
    return np.clip(intensity, 0.0, 1.0), DepthMap(np.where(valid, depth, np.nan), valid=valid)


""" Ground truth """


def analytic_tsdf(scene: Scene, spec: VoxelGridSpec, truncation: float) -> TsdfVolume:
    """exact truncated signed distance of the primitive union."""
    if not truncation > 0:
        raise ValidationError("truncation must be positive")
    sdf = scene.sdf(geometry.voxel_centers(spec))
    return TsdfVolume(
        spec, np.clip(sdf / truncation, -1.0, 1.0), np.ones(spec.dims), truncation
    )


def _plane_basis(normal: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    helper = np.eye(3)[np.abs(normal).argmin()]
    first = np.cross(normal, helper)
    first /= np.linalg.norm(first)
    return first, np.cross(normal, first)


def _grid(size: float, spacing: float) -> np.ndarray:
    count = max(int(np.ceil(size / spacing)), 1)
    return (np.arange(count) + 0.5) * (size / count) - size / 2.0


def sample_points(scene: Scene, spacing: float = 0.0125) -> np.ndarray:
    """deterministic surface points of every primitive, about `spacing` apart.

    Planes are sampled inside the scene bounds only.
    """
    points = []
    lower, upper = scene.bounds
    for primitive in scene.primitives:
        if isinstance(primitive, Sphere):
            count = int(np.ceil(4 * np.pi * primitive.radius ** 2 / spacing ** 2))
            index = np.arange(count) + 0.5
            polar = np.arccos(1.0 - 2.0 * index / count)
            azimuth = np.pi * (1.0 + 5 ** 0.5) * index
            directions = np.stack(
                [np.cos(azimuth) * np.sin(polar), np.sin(azimuth) * np.sin(polar), np.cos(polar)],
                axis=-1,
            )
            points.append(primitive.center + primitive.radius * directions)
        elif isinstance(primitive, Box):
            size = primitive.max - primitive.min
            for axis in range(3):
                others = [a for a in range(3) if a != axis]
                a, b = np.meshgrid(
                    _grid(size[others[0]], spacing), _grid(size[others[1]], spacing), indexing="ij"
                )
                for side in (primitive.min[axis], primitive.max[axis]):
                    face = np.empty((a.size, 3))
                    face[:, axis] = side
                    face[:, others[0]] = primitive.center[others[0]] + a.ravel()
                    face[:, others[1]] = primitive.center[others[1]] + b.ravel()
                    points.append(face)
        else:
            first, second = _plane_basis(primitive.normal)
            extent = 2.0 * np.linalg.norm(upper - lower)
            a, b = np.meshgrid(_grid(extent, spacing), _grid(extent, spacing), indexing="ij")
            plane = primitive.point + a.reshape(-1, 1) * first + b.reshape(-1, 1) * second
            inside = np.all((plane >= lower - BOUNDS_TOLERANCE) & (plane <= upper + BOUNDS_TOLERANCE), axis=-1)
            points.append(plane[inside])

    return np.concatenate(points) if points else np.zeros((0, 3))

from voxfuse.core.models import Camera, Intrinsics, Pose
from voxfuse.synthetic import Box, Plane, Scene, Sphere

K = Intrinsics(fx=100.0, fy=100.0, cx=80.0, cy=60.0, width=160, height=120)
CAMERA = Camera(K, Pose.identity())

WALL = Scene([Plane(point=(0.0, 0.0, 2.0), normal=(0.0, 0.0, -1.0), texture=1)])
BALL = Scene([Sphere(center=(0.0, 0.0, 2.0), radius=0.5)])
CRATE = Scene([Box(min=(-0.5, -0.5, 1.5), max=(0.5, 0.5, 2.5), texture=4)])

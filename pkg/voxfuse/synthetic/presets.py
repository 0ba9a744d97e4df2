"""Built-in scene descriptions."""

SPHERE = {
    "primitives": [{"type": "sphere", "center": [0.0, 0.0, 0.0], "radius": 0.5, "texture": 1}],
    "bounds": [[-0.5, -0.5, -0.5], [0.5, 0.5, 0.5]],
    "trajectory": {"center": [0.0, 0.0, 0.0], "radius": 2.0, "n": 36, "step": 10.0},
    "intrinsics": {"fx": 150.0, "fy": 150.0, "cx": 79.5, "cy": 59.5, "width": 160, "height": 120},
}

ROOM = {
    "primitives": [
        {"type": "plane", "point": [0.0, 0.0, 3.0], "normal": [0.0, 0.0, -1.0], "texture": 2},
        {"type": "plane", "point": [0.0, 1.0, 2.0], "normal": [0.0, -1.0, 0.0], "texture": 3},
    ],
    "bounds": [[-3.0, -2.0, 0.0], [3.0, 1.0, 3.0]],
    "trajectory": {
        "center": [0.0, 0.4, 3.0],
        "radius": 2.0,
        "n": 12,
        "step": 10.0,
        "start": -55.0,
    },
    "intrinsics": {"fx": 250.0, "fy": 250.0, "cx": 159.5, "cy": 119.5, "width": 320, "height": 240},
}

PRESETS = dict(sphere=SPHERE, room=ROOM)

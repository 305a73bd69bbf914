"""Built-in demo fixtures: a furnished room, seven windows, one trace.

The builders here are the single source of truth. The committed copies
under ``assets/demo/`` exist so the CLI works straight after install;
``scripts/make_demo_assets.py`` regenerates them and a test asserts the
two never drift.
"""

from __future__ import annotations

import json
from importlib.resources import files
from pathlib import Path

from .scene import Scene, build_adjacency, parse_scene
from .surfaces import FlatSurface, extract_planar_regions

DEMO_SCENE_ID = "demo-room"

#: (corner list in cyclic order, label) per rectangle; corners are meters.
_DEMO_QUADS = [
    # room shell: 4 m wide (x), 2.5 m tall (y), 3 m deep (z)
    ([(-2, 0, -1.5), (2, 0, -1.5), (2, 0, 1.5), (-2, 0, 1.5)], "floor"),
    ([(-2, 2.5, -1.5), (-2, 2.5, 1.5), (2, 2.5, 1.5), (2, 2.5, -1.5)], "ceiling"),
    ([(-2, 0, -1.5), (-2, 2.5, -1.5), (2, 2.5, -1.5), (2, 0, -1.5)], "wall"),
    ([(-2, 0, 1.5), (2, 0, 1.5), (2, 2.5, 1.5), (-2, 2.5, 1.5)], "wall"),
    ([(-2, 0, -1.5), (-2, 0, 1.5), (-2, 2.5, 1.5), (-2, 2.5, -1.5)], "wall"),
    ([(2, 0, -1.5), (2, 2.5, -1.5), (2, 2.5, 1.5), (2, 0, 1.5)], "wall"),
    # furniture: free-standing tops and one cabinet front
    ([(0.5, 0.75, -0.9), (1.5, 0.75, -0.9), (1.5, 0.75, -0.3), (0.5, 0.75, -0.3)], "table"),
    ([(-1.6, 0.72, 0.3), (-0.6, 0.72, 0.3), (-0.6, 0.72, 0.9), (-1.6, 0.72, 0.9)], "desk"),
    ([(-1, 0.9, -1.45), (0, 0.9, -1.45), (0, 1.7, -1.45), (-1, 1.7, -1.45)], "cabinet"),
]

_DEMO_WINDOWS = [
    {"id": "w-chat", "size": "400x300", "location": "none", "name": "Chat"},
    {"id": "w-maps", "size": "200x200", "location": "none", "name": "Google Maps"},
    {"id": "w-vs", "size": "800x600", "location": "none", "name": "Visual Studio"},
    {"id": "w-browser", "size": "500x700", "location": "none", "name": "Browser"},
    {"id": "w-slides", "size": "640x360", "location": "none", "name": "Slides"},
    {"id": "w-notes", "size": "300x400", "location": "none", "name": "Notes"},
    {"id": "w-cal", "size": "400x400", "location": "none", "name": "Calendar"},
]


def demo_scene_doc() -> dict:
    """The demo room as a scene JSON document.

    Every rectangle contributes its own four vertices, so the quads stay
    disconnected and extract as nine separate surfaces.
    """
    vertices: list[list[float]] = []
    faces: list[list[int]] = []
    labels: list[str] = []
    for corners, label in _DEMO_QUADS:
        base = len(vertices)
        vertices.extend([float(c) for c in corner] for corner in corners)
        faces.append([base, base + 1, base + 2])
        faces.append([base, base + 2, base + 3])
        labels.extend([label, label])
    return {
        "scene_id": DEMO_SCENE_ID,
        "vertices": vertices,
        "faces": faces,
        "labels": labels,
    }


def demo_scene() -> Scene:
    return parse_scene(demo_scene_doc())


def demo_surfaces() -> list[FlatSurface]:
    scene = demo_scene()
    return extract_planar_regions(scene, build_adjacency(scene))


def demo_surface_id(semantic: str) -> str:
    """Id of the largest demo surface with the given label."""
    for s in demo_surfaces():
        if s.semantic == semantic:
            return s.id
    raise ValueError(f"demo scene has no {semantic!r} surface")


def demo_windows_doc() -> list[dict]:
    return [dict(w) for w in _DEMO_WINDOWS]


def demo_trace_doc() -> list[dict]:
    """Deictic walkthrough: look ahead, point at Maps, point at the
    cabinet, then ask for "that" to go "there"."""
    cabinet = demo_surface_id("cabinet")
    return [
        {
            "t": 0.0,
            "kind": "head",
            "payload": {
                "position": [0.0, 1.6, 0.0],
                "forward": [0.0, 0.0, -1.0],
                "timestamp": 0.0,
            },
        },
        {
            "t": 1.0,
            "kind": "pointing",
            "payload": {"identifier": "w-maps", "hoverDuration": 1.5, "timestamp": 1.0},
        },
        {
            "t": 2.0,
            "kind": "pointing",
            "payload": {"identifier": cabinet, "hoverDuration": 1.2, "timestamp": 2.0},
        },
        {
            "t": 3.0,
            "kind": "request",
            "payload": {"text": "Can you put that there?"},
        },
    ]


def _dump(doc: object) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_demo_fixtures(out_dir: str | Path) -> dict[str, Path]:
    """Write scene/windows/trace JSON files; returns name → path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = {}
    for name, doc in (
        ("scene.json", demo_scene_doc()),
        ("windows.json", demo_windows_doc()),
        ("trace_put_that_there.json", demo_trace_doc()),
    ):
        path = out / name
        path.write_text(_dump(doc), encoding="utf-8")
        written[name] = path
    return written


def _asset(name: str) -> Path:
    return Path(str(files("xrwm").joinpath(f"assets/demo/{name}")))


def default_scene_path() -> Path:
    return _asset("scene.json")


def default_windows_path() -> Path:
    return _asset("windows.json")


def default_trace_path() -> Path:
    return _asset("trace_put_that_there.json")


def default_transcript_path() -> Path:
    return _asset("transcript_put_that_there.json")

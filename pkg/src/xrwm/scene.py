"""Labeled room meshes: loading, validation, relabeling, adjacency.

A scene is a triangle mesh where every face carries exactly one semantic
label. Units are meters in a right-handed frame with +Y up. Scenes are
immutable after load; all operations below return new values.

Scene file format::

    {
      "scene_id": "room-1",
      "vertices": [[x, y, z], ...],
      "faces": [[i, j, k], ...],
      "labels": ["wall", ...]          # one per face
    }

Label-override file format: JSON object mapping face-index strings to
label names, e.g. ``{"3": "table"}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import GeometryError, SchemaViolation
from .labels import LabelOrigin, SemanticLabel, label_from_name

#: Faces with less area than this (m^2) are treated as exporter noise.
DEGENERATE_AREA_M2 = 1e-10


@dataclass(frozen=True, eq=False)
class Scene:
    """Validated labeled triangle mesh.

    ``vertices`` is float64 (V, 3); ``faces`` is int64 (F, 3);
    ``face_labels`` has one entry per face. ``dropped_faces`` counts
    degenerate or duplicate faces removed at load time.
    """

    scene_id: str
    vertices: np.ndarray
    faces: np.ndarray
    face_labels: tuple[SemanticLabel, ...]
    dropped_faces: int = 0

    def __post_init__(self) -> None:
        self.vertices.setflags(write=False)
        self.faces.setflags(write=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scene):
            return NotImplemented
        return (
            self.scene_id == other.scene_id
            and np.array_equal(self.vertices, other.vertices)
            and np.array_equal(self.faces, other.faces)
            and self.face_labels == other.face_labels
        )

    @property
    def num_faces(self) -> int:
        return int(self.faces.shape[0])

    @property
    def num_vertices(self) -> int:
        return int(self.vertices.shape[0])

    def face_normals(self) -> np.ndarray:
        """Unit normals per face, from vertex winding (right-hand rule)."""
        tri = self.vertices[self.faces]
        cross = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
        norms = np.linalg.norm(cross, axis=1, keepdims=True)
        return cross / norms

    def face_areas(self) -> np.ndarray:
        tri = self.vertices[self.faces]
        cross = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
        return 0.5 * np.linalg.norm(cross, axis=1)

    def face_centroids(self) -> np.ndarray:
        return self.vertices[self.faces].mean(axis=1)

    def bounding_box_centroid(self) -> np.ndarray:
        return 0.5 * (self.vertices.min(axis=0) + self.vertices.max(axis=0))


@dataclass(frozen=True)
class FaceAdjacency:
    """Per-face neighbor lists over shared undirected edges."""

    neighbors: tuple[tuple[int, ...], ...] = field(default=())

    def __len__(self) -> int:
        return len(self.neighbors)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaViolation(message)


def parse_scene(doc: dict) -> Scene:
    """Validate a scene document and build a Scene.

    Degenerate (area < 1e-10 m^2) and duplicate faces are dropped, counted
    in ``dropped_faces``; out-of-range indices and unknown labels are hard
    errors.
    """
    _require(isinstance(doc, dict), "scene document must be a JSON object")
    for key in ("scene_id", "vertices", "faces", "labels"):
        _require(key in doc, f"scene document missing {key!r}")
    _require(isinstance(doc["scene_id"], str), "scene_id must be a string")
    _require(isinstance(doc["vertices"], list), "vertices must be a list")
    _require(isinstance(doc["faces"], list), "faces must be a list")
    _require(isinstance(doc["labels"], list), "labels must be a list")
    _require(
        len(doc["labels"]) == len(doc["faces"]),
        "labels must have exactly one entry per face",
    )

    for i, v in enumerate(doc["vertices"]):
        _require(
            isinstance(v, list)
            and len(v) == 3
            and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v),
            f"vertex {i} must be a list of 3 numbers",
        )
    vertices = np.asarray(doc["vertices"], dtype=np.float64).reshape(-1, 3)

    n_vertices = vertices.shape[0]
    for i, f in enumerate(doc["faces"]):
        _require(
            isinstance(f, list)
            and len(f) == 3
            and all(isinstance(c, int) and not isinstance(c, bool) for c in f),
            f"face {i} must be a list of 3 integer indices",
        )
        for c in f:
            if c < 0 or c >= n_vertices:
                raise GeometryError(
                    f"face {i} references vertex {c} of {n_vertices}"
                )
    faces = np.asarray(doc["faces"], dtype=np.int64).reshape(-1, 3)

    labels = tuple(label_from_name(name) for name in doc["labels"])

    # Drop degenerate (zero-area, including repeated-vertex) faces, then
    # duplicate faces (same vertex set, any winding), keeping first wins.
    tri = vertices[faces] if len(faces) else np.zeros((0, 3, 3))
    cross = (
        np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
        if len(faces)
        else np.zeros((0, 3))
    )
    areas = 0.5 * np.linalg.norm(cross, axis=1) if len(faces) else np.zeros(0)

    keep: list[int] = []
    seen: set[tuple[int, int, int]] = set()
    for i in range(len(faces)):
        if areas[i] < DEGENERATE_AREA_M2:
            continue
        key = tuple(sorted(faces[i].tolist()))
        if key in seen:
            continue
        seen.add(key)
        keep.append(i)

    dropped = len(faces) - len(keep)
    return Scene(
        scene_id=doc["scene_id"],
        vertices=vertices,
        faces=faces[keep].copy() if dropped else faces,
        face_labels=tuple(labels[i] for i in keep) if dropped else labels,
        dropped_faces=dropped,
    )


def load_scene(path: str | Path) -> Scene:
    """Load and validate a scene JSON file."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(str(p))
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"scene file {p} is not valid JSON: {exc}") from exc
    return parse_scene(doc)


def serialize_scene(scene: Scene) -> dict:
    """Scene back to its document form (canonical label spellings)."""
    return {
        "scene_id": scene.scene_id,
        "vertices": [[float(c) for c in v] for v in scene.vertices],
        "faces": [[int(c) for c in f] for f in scene.faces],
        "labels": [lab.name for lab in scene.face_labels],
    }


def apply_labels(scene: Scene, overrides: dict[int, str]) -> Scene:
    """Return a copy of ``scene`` with the given faces relabeled.

    Overridden labels always get manual origin. The input scene is left
    untouched.
    """
    relabeled = list(scene.face_labels)
    for idx, name in overrides.items():
        if not isinstance(idx, int) or idx < 0 or idx >= scene.num_faces:
            raise GeometryError(
                f"override index {idx!r} out of range for {scene.num_faces} faces"
            )
        relabeled[idx] = SemanticLabel(name, origin=LabelOrigin.MANUAL)
    return Scene(
        scene_id=scene.scene_id,
        vertices=scene.vertices,
        faces=scene.faces,
        face_labels=tuple(relabeled),
        dropped_faces=scene.dropped_faces,
    )


def load_label_overrides(path: str | Path) -> dict[int, str]:
    """Read a label-override file (face-index string -> label name)."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(str(p))
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"override file {p} is not valid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "override document must be a JSON object")
    out: dict[int, str] = {}
    for key, name in doc.items():
        try:
            idx = int(key)
        except ValueError:
            raise SchemaViolation(f"override key {key!r} is not a face index") from None
        _require(isinstance(name, str), f"override for face {key} must be a label name")
        out[idx] = name
    return out


def build_adjacency(scene: Scene) -> FaceAdjacency:
    """Neighbor lists over shared undirected edges.

    Symmetric by construction; a face never lists itself. Runs in O(F)
    expected time via an edge hash.
    """
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for fi, (a, b, c) in enumerate(scene.faces.tolist()):
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            edge_faces.setdefault(key, []).append(fi)

    neighbor_sets: list[set[int]] = [set() for _ in range(scene.num_faces)]
    for members in edge_faces.values():
        if len(members) < 2:
            continue
        for i in members:
            for j in members:
                if i != j:
                    neighbor_sets[i].add(j)

    return FaceAdjacency(tuple(tuple(sorted(s)) for s in neighbor_sets))

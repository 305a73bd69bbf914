"""Shared fixtures: mesh builders, hand-made surfaces, network guard."""

from __future__ import annotations

import socket

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from xrwm.surfaces import FlatSurface, PlaneBasis

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(autouse=True)
def _deny_network(monkeypatch):
    """The suite must pass with no network; fail loudly if anything dials out."""

    def _blocked(self, *args, **kwargs):
        raise RuntimeError("network access attempted during tests")

    monkeypatch.setattr(socket.socket, "connect", _blocked)


# Quad corner order for an axis-aligned box, wound outward.
_BOX_QUADS = (
    (0, 1, 3, 2),  # x = lo
    (4, 6, 7, 5),  # x = hi
    (0, 4, 5, 1),  # y = lo
    (2, 3, 7, 6),  # y = hi
    (0, 2, 6, 4),  # z = lo
    (1, 5, 7, 3),  # z = hi
)


def cube_scene_doc(scene_id: str = "cube", label: str = "wall", size: float = 1.0) -> dict:
    """Axis-aligned cube at the origin: 8 vertices, 12 triangles."""
    vertices = [
        [size * x, size * y, size * z] for x in (0, 1) for y in (0, 1) for z in (0, 1)
    ]
    faces: list[list[int]] = []
    labels: list[str] = []
    for a, b, c, d in _BOX_QUADS:
        faces.append([a, b, c])
        faces.append([a, c, d])
        labels.extend([label, label])
    return {"scene_id": scene_id, "vertices": vertices, "faces": faces, "labels": labels}


def grid_plane_doc(
    nx: int = 10,
    nz: int = 10,
    width: float = 2.0,
    depth: float = 2.0,
    label: str = "table",
    scene_id: str = "plane",
) -> dict:
    """One rectangle subdivided into 2*nx*nz triangles with shared vertices."""
    vertices = []
    for i in range(nx + 1):
        for j in range(nz + 1):
            vertices.append([i * width / nx, 0.0, j * depth / nz])

    def vid(i: int, j: int) -> int:
        return i * (nz + 1) + j

    faces: list[list[int]] = []
    labels: list[str] = []
    for i in range(nx):
        for j in range(nz):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            faces.append([a, b, c])
            faces.append([a, c, d])
            labels.extend([label, label])
    return {"scene_id": scene_id, "vertices": vertices, "faces": faces, "labels": labels}


def make_surface(
    sid: str = "s-test",
    extent_u: float = 2.0,
    extent_v: float = 1.0,
    semantic: str = "wall",
    centroid: tuple[float, float, float] = (0.0, 1.0, 0.0),
    normal: tuple[float, float, float] = (0.0, 0.0, 1.0),
    u_hint: tuple[float, float, float] = (1.0, 0.0, 0.0),
    area: float | None = None,
) -> FlatSurface:
    """Hand-build a surface with an exactly orthonormal basis."""
    n = np.asarray(normal, dtype=np.float64)
    n = n / np.linalg.norm(n)
    u = np.asarray(u_hint, dtype=np.float64)
    u = u - n * float(u @ n)
    if np.linalg.norm(u) < 1e-6:
        # hint was parallel to the normal; fall back to any other axis
        for axis in ((0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 0.0, 0.0)):
            u = np.asarray(axis) - n * float(np.asarray(axis) @ n)
            if np.linalg.norm(u) > 1e-6:
                break
    u = u / np.linalg.norm(u)
    v = np.cross(n, u)
    basis = PlaneBasis(
        centroid=tuple(float(c) for c in centroid),
        normal=tuple(float(c) for c in n),
        u_axis=tuple(float(c) for c in u),
        v_axis=tuple(float(c) for c in v),
    )
    return FlatSurface(
        id=sid,
        face_indices=(0,),
        basis=basis,
        extent_u=extent_u,
        extent_v=extent_v,
        semantic=semantic,
        area=extent_u * extent_v if area is None else area,
    )

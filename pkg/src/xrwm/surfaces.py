"""Planar region extraction and plane fitting.

Flat surfaces are grown from adjacent mesh faces whose normals agree with
the region seed's normal within a fixed angular threshold; each surviving
region gets a PCA-fitted plane basis, a majority semantic label, and a
deterministic content-hash id. Surfaces are the placement targets handed
to the resolver.
"""

from __future__ import annotations

import hashlib
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometry, ParamError
from .labels import VOCABULARY_RANK
from .scene import FaceAdjacency, Scene

#: Default angular threshold for coplanarity (degrees).
DEFAULT_ANGULAR_THRESHOLD_DEG = 15.0

#: Default minimum region area (m^2); smaller regions are unusable targets.
DEFAULT_MIN_AREA_M2 = 0.09

_ORTHO_TOL = 1e-9


@dataclass(frozen=True)
class PlaneBasis:
    """Orthonormal right-handed frame of a fitted plane.

    ``normal == u_axis x v_axis`` within 1e-9; ``u_axis``/``v_axis`` span
    the plane, ``centroid`` is the mean of the fitted points.
    """

    centroid: tuple[float, float, float]
    normal: tuple[float, float, float]
    u_axis: tuple[float, float, float]
    v_axis: tuple[float, float, float]

    def __post_init__(self) -> None:
        n, u, v = (np.asarray(x) for x in (self.normal, self.u_axis, self.v_axis))
        for name, vec in (("normal", n), ("u_axis", u), ("v_axis", v)):
            if abs(np.linalg.norm(vec) - 1.0) > _ORTHO_TOL:
                raise DegenerateGeometry(f"{name} is not unit length")
        if (
            abs(float(n @ u)) > _ORTHO_TOL
            or abs(float(n @ v)) > _ORTHO_TOL
            or abs(float(u @ v)) > _ORTHO_TOL
        ):
            raise DegenerateGeometry("plane basis is not orthogonal")
        if np.linalg.norm(np.cross(u, v) - n) > _ORTHO_TOL:
            raise DegenerateGeometry("plane basis is not right-handed")


@dataclass(frozen=True)
class FlatSurface:
    """A connected planar region of the scene mesh.

    ``extent_u``/``extent_v`` are the side lengths (m) of the region's
    bounding rectangle in plane coordinates; extraction guarantees
    ``extent_u >= extent_v``. ``area`` is the summed face area, which for
    ragged regions is smaller than the bounding rectangle.
    """

    id: str
    face_indices: tuple[int, ...]
    basis: PlaneBasis
    extent_u: float
    extent_v: float
    semantic: str
    area: float


def _canonical_sign(vec: np.ndarray) -> np.ndarray:
    """Flip ``vec`` so its largest-magnitude component is positive."""
    idx = int(np.argmax(np.abs(vec)))
    return -vec if vec[idx] < 0 else vec


def fit_plane_pca(
    points: np.ndarray | list,
    toward: np.ndarray | tuple[float, float, float] | None = None,
) -> PlaneBasis:
    """Fit a plane to >= 3 non-collinear points via PCA.

    The normal is the smallest-eigenvalue direction of the point
    covariance, ``u_axis`` the largest. When ``toward`` is given the
    normal is flipped to point from the centroid toward that reference
    point (the scene interior); otherwise the sign is canonicalized so
    results are reproducible across platforms.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    if pts.shape[0] < 3:
        raise DegenerateGeometry(f"plane fit needs >= 3 points, got {pts.shape[0]}")

    centroid = pts.mean(axis=0)
    centered = pts - centroid
    cov = centered.T @ centered / pts.shape[0]
    eigvals, eigvecs = np.linalg.eigh(cov)  # ascending eigenvalues

    if eigvals[1] <= max(eigvals[2] * 1e-12, 1e-18):
        raise DegenerateGeometry("points are collinear or coincident")

    normal = _canonical_sign(eigvecs[:, 0])
    u_axis = _canonical_sign(eigvecs[:, 2])

    if toward is not None:
        ref = np.asarray(toward, dtype=np.float64)
        side = float(normal @ (ref - centroid))
        if side < 0:
            normal = -normal

    # Rebuild v from n and u so the frame is exactly right-handed
    # (n = u x v  <=>  v = n x u for orthonormal frames).
    normal = normal / np.linalg.norm(normal)
    u_axis = u_axis - normal * float(u_axis @ normal)
    u_axis = u_axis / np.linalg.norm(u_axis)
    v_axis = np.cross(normal, u_axis)

    return PlaneBasis(
        centroid=tuple(float(c) for c in centroid),
        normal=tuple(float(c) for c in normal),
        u_axis=tuple(float(c) for c in u_axis),
        v_axis=tuple(float(c) for c in v_axis),
    )


def _surface_id(scene_id: str, face_indices: tuple[int, ...]) -> str:
    digest = hashlib.sha256(
        f"{scene_id}:{','.join(str(i) for i in sorted(face_indices))}".encode()
    )
    return digest.hexdigest()[:16]


def _majority_label(scene: Scene, face_indices: list[int]) -> str:
    counts: dict[str, int] = {}
    for fi in face_indices:
        name = scene.face_labels[fi].name
        counts[name] = counts.get(name, 0) + 1
    # Ties break toward the earlier vocabulary entry.
    return min(counts, key=lambda name: (-counts[name], VOCABULARY_RANK[name]))


def extract_planar_regions(
    scene: Scene,
    adjacency: FaceAdjacency,
    angular_threshold_deg: float = DEFAULT_ANGULAR_THRESHOLD_DEG,
    min_area_m2: float = DEFAULT_MIN_AREA_M2,
) -> list[FlatSurface]:
    """Grow coplanar regions and fit a plane to each.

    Greedy breadth-first growth: seeds are unvisited faces in descending
    area order; a face joins a region iff it is adjacent to a member face
    and its normal is within the angular threshold of the *seed* normal
    (seed comparison prevents drift around curved geometry). Regions whose
    summed face area falls below ``min_area_m2`` are discarded. Output is
    sorted by descending area (ties by id) and is fully deterministic,
    ids included.
    """
    if not (0.0 < angular_threshold_deg < 90.0):
        raise ParamError(
            f"angular threshold must be in (0, 90) degrees, got {angular_threshold_deg}"
        )
    if min_area_m2 < 0:
        raise ParamError(f"min_area_m2 must be >= 0, got {min_area_m2}")

    n_faces = scene.num_faces
    if n_faces == 0:
        return []

    normals = scene.face_normals()
    areas = scene.face_areas()
    cos_threshold = math.cos(math.radians(angular_threshold_deg))
    interior = scene.bounding_box_centroid()

    seed_order = sorted(range(n_faces), key=lambda i: (-areas[i], i))
    visited = np.zeros(n_faces, dtype=bool)
    regions: list[list[int]] = []

    for seed in seed_order:
        if visited[seed]:
            continue
        visited[seed] = True
        seed_normal = normals[seed]
        member = [seed]
        queue = deque([seed])
        while queue:
            face = queue.popleft()
            for nb in adjacency.neighbors[face]:
                if visited[nb]:
                    continue
                if float(normals[nb] @ seed_normal) >= cos_threshold:
                    visited[nb] = True
                    member.append(nb)
                    queue.append(nb)
        regions.append(member)

    surfaces: list[FlatSurface] = []
    for member in regions:
        region_area = float(areas[member].sum())
        if region_area < min_area_m2:
            continue

        vertex_ids = np.unique(scene.faces[member].ravel())
        basis = fit_plane_pca(scene.vertices[vertex_ids], toward=interior)

        centroid = np.asarray(basis.centroid)
        rel = scene.vertices[vertex_ids] - centroid
        u = np.asarray(basis.u_axis)
        v = np.asarray(basis.v_axis)
        n = np.asarray(basis.normal)
        u_coords = rel @ u
        v_coords = rel @ v
        extent_u = float(u_coords.max() - u_coords.min())
        extent_v = float(v_coords.max() - v_coords.min())
        if extent_v > extent_u:
            # Swap to canonical extent_u >= extent_v; negating the new v
            # keeps the frame right-handed with the same normal.
            u, v = v, -u
            extent_u, extent_v = extent_v, extent_u
            basis = PlaneBasis(
                centroid=basis.centroid,
                normal=tuple(float(c) for c in n),
                u_axis=tuple(float(c) for c in u),
                v_axis=tuple(float(c) for c in v),
            )

        member_t = tuple(sorted(member))
        surfaces.append(
            FlatSurface(
                id=_surface_id(scene.scene_id, member_t),
                face_indices=member_t,
                basis=basis,
                extent_u=extent_u,
                extent_v=extent_v,
                semantic=_majority_label(scene, member),
                area=region_area,
            )
        )

    surfaces.sort(key=lambda s: (-s.area, s.id))
    return surfaces


def surface_descriptor(
    surface: FlatSurface,
    visibility: float,
    current_windows: list[str] | tuple[str, ...] = (),
) -> dict:
    """The JSON object describing one surface in resolver input.

    ``size`` is ``"<W>x<H>"`` with the extents in whole centimeters;
    ``visibility`` is clamped to [0, 1] and rounded so serialized prompts
    are byte-reproducible.
    """
    if not (0.0 <= visibility <= 1.0):
        raise ParamError(f"visibility must be in [0, 1], got {visibility}")
    w_cm = int(round(surface.extent_u * 100.0))
    h_cm = int(round(surface.extent_v * 100.0))
    return {
        "id": surface.id,
        "size": f"{w_cm}x{h_cm}",
        "visibility": round(float(visibility), 6),
        "semantic": surface.semantic,
        "current_windows": list(current_windows),
    }


def display_names(surfaces: list[FlatSurface]) -> dict[str, str]:
    """Stable human-readable handles like ``cabinet-1``, ``wall-2``.

    Numbering follows the surface list order (extraction emits area-desc),
    so the largest surface of each semantic gets ``-1``.
    """
    counts: dict[str, int] = {}
    names: dict[str, str] = {}
    for s in surfaces:
        counts[s.semantic] = counts.get(s.semantic, 0) + 1
        names[s.id] = f"{s.semantic.replace(' ', '-')}-{counts[s.semantic]}"
    return names

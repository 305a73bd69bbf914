"""Virtual window descriptors, placement state, and automatic layout.

A workspace maps window ids to descriptors and surface ids to ordered
placement lists, with the two sides kept bidirectionally consistent: a
window's ``location`` is a surface id exactly when the window appears in
that surface's list, and ``"none"`` otherwise. All operations are pure
and return a new workspace, which makes plan execution trivially atomic
and traces replayable.

Windows file format: JSON array of window objects exactly as they appear
in resolver input::

    [{"id": "w-maps", "size": "200x200", "location": "none", "name": "Google Maps"}]
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    MismatchedSurface,
    SchemaViolation,
    SurfaceTooSmall,
    UnknownSurface,
    UnknownWindow,
)
from .surfaces import FlatSurface

#: Windows not placed on any surface carry this location literal.
UNPLACED = "none"

#: Default gap (m) kept around each laid-out window.
DEFAULT_MARGIN_M = 0.05

_SIZE_RE = re.compile(r"^(\d+)x(\d+)$")


def parse_size(size: str) -> tuple[int, int]:
    """Parse a ``"WxH"`` size string into positive integers."""
    m = _SIZE_RE.match(size)
    if not m:
        raise SchemaViolation(f"size must look like '200x200', got {size!r}")
    w, h = int(m.group(1)), int(m.group(2))
    if w <= 0 or h <= 0:
        raise SchemaViolation(f"size dimensions must be > 0, got {size!r}")
    return w, h


@dataclass(frozen=True)
class WindowDescriptor:
    """One virtual application window."""

    id: str
    size_px: tuple[int, int]
    location: str
    name: str

    def __post_init__(self) -> None:
        if not self.id:
            raise SchemaViolation("window id must be non-empty")
        if self.size_px[0] <= 0 or self.size_px[1] <= 0:
            raise SchemaViolation(f"window {self.id}: size must be positive")

    @property
    def size_str(self) -> str:
        return f"{self.size_px[0]}x{self.size_px[1]}"

    @property
    def aspect(self) -> float:
        return self.size_px[0] / self.size_px[1]

    def as_json(self) -> dict:
        return {
            "id": self.id,
            "size": self.size_str,
            "location": self.location,
            "name": self.name,
        }


@dataclass(frozen=True)
class PlacementEvent:
    """One executed action, sufficient to replay against a workspace."""

    verb: str
    window_id: str
    surface_id: str

    def as_json(self) -> dict:
        return {
            "verb": self.verb,
            "window_id": self.window_id,
            "surface_id": self.surface_id,
        }


@dataclass(frozen=True)
class Workspace:
    """Immutable window/placement state.

    ``placements`` holds every known surface id (empty list when nothing
    is placed there), so surface validity checks need no extra registry.
    """

    windows: dict[str, WindowDescriptor]
    placements: dict[str, tuple[str, ...]]

    def window(self, window_id: str) -> WindowDescriptor:
        try:
            return self.windows[window_id]
        except KeyError:
            raise UnknownWindow(f"no window with id {window_id!r}") from None

    def surface_ids(self) -> tuple[str, ...]:
        return tuple(self.placements)

    def windows_json(self) -> list[dict]:
        """The resolver-input ``windows`` array, in creation order."""
        return [w.as_json() for w in self.windows.values()]

    def as_json(self) -> dict:
        return {
            "windows": self.windows_json(),
            "placements": {sid: list(wids) for sid, wids in self.placements.items()},
        }


def new_workspace(
    windows: list[WindowDescriptor], surface_ids: list[str] | tuple[str, ...]
) -> Workspace:
    """Build a consistent workspace from descriptors and known surfaces."""
    seen: dict[str, WindowDescriptor] = {}
    for w in windows:
        if w.id in seen:
            raise SchemaViolation(f"duplicate window id {w.id!r}")
        seen[w.id] = w
    placements: dict[str, list[str]] = {sid: [] for sid in surface_ids}
    if len(placements) != len(surface_ids):
        raise SchemaViolation("duplicate surface id in surface list")
    for w in seen.values():
        if w.location == UNPLACED:
            continue
        if w.location not in placements:
            raise UnknownSurface(
                f"window {w.id!r} is located on unknown surface {w.location!r}"
            )
        placements[w.location].append(w.id)
    return Workspace(
        windows=dict(seen),
        placements={sid: tuple(wids) for sid, wids in placements.items()},
    )


def load_windows_file(path: str | Path) -> list[WindowDescriptor]:
    """Read a windows JSON file into descriptors."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(str(p))
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"windows file {p} is not valid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise SchemaViolation("windows file must hold a JSON array")
    out = []
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict):
            raise SchemaViolation(f"windows[{i}] must be an object")
        for key in ("id", "size", "location", "name"):
            if key not in entry or not isinstance(entry[key], str):
                raise SchemaViolation(f"windows[{i}] missing string field {key!r}")
        out.append(
            WindowDescriptor(
                id=entry["id"],
                size_px=parse_size(entry["size"]),
                location=entry["location"],
                name=entry["name"],
            )
        )
    return out


def _check_surface(ws: Workspace, surface_id: str) -> None:
    if surface_id not in ws.placements:
        raise UnknownSurface(f"no surface with id {surface_id!r}")


def place_window(ws: Workspace, window_id: str, surface_id: str) -> Workspace:
    """Place (or relocate) a window onto a surface.

    The window leaves any previous surface and is appended to the target's
    placement list; placing a window on the surface it already occupies is
    a no-op that preserves its slot order.
    """
    win = ws.window(window_id)
    _check_surface(ws, surface_id)
    if win.location == surface_id:
        return ws

    placements = {sid: list(wids) for sid, wids in ws.placements.items()}
    if win.location != UNPLACED:
        placements[win.location].remove(window_id)
    placements[surface_id].append(window_id)

    windows = dict(ws.windows)
    windows[window_id] = WindowDescriptor(
        id=win.id, size_px=win.size_px, location=surface_id, name=win.name
    )
    return Workspace(
        windows=windows,
        placements={sid: tuple(wids) for sid, wids in placements.items()},
    )


def remove_window(ws: Workspace, window_id: str, surface_id: str) -> Workspace:
    """Take a window off the named surface; its location becomes ``none``.

    Naming a surface the window is not on raises MismatchedSurface, which
    signals resolver/state drift rather than a user mistake.
    """
    win = ws.window(window_id)
    _check_surface(ws, surface_id)
    if win.location != surface_id:
        raise MismatchedSurface(
            f"window {window_id!r} is on {win.location!r}, not {surface_id!r}"
        )

    placements = {sid: list(wids) for sid, wids in ws.placements.items()}
    placements[surface_id].remove(window_id)

    windows = dict(ws.windows)
    windows[window_id] = WindowDescriptor(
        id=win.id, size_px=win.size_px, location=UNPLACED, name=win.name
    )
    return Workspace(
        windows=windows,
        placements={sid: tuple(wids) for sid, wids in placements.items()},
    )


def apply_event(ws: Workspace, event: PlacementEvent) -> Workspace:
    """Replay one logged event (event-sourcing fold step)."""
    if event.verb == "place":
        return place_window(ws, event.window_id, event.surface_id)
    if event.verb == "remove":
        return remove_window(ws, event.window_id, event.surface_id)
    raise SchemaViolation(f"unreplayable event verb {event.verb!r}")


@dataclass(frozen=True)
class LayoutSlot:
    """Where one window is drawn on a surface, in plane coordinates.

    ``u_offset``/``v_offset`` locate the slot center relative to the
    surface centroid; ``display_w``/``display_h`` are meters.
    """

    window_id: str
    u_offset: float
    v_offset: float
    display_w: float
    display_h: float

    def as_json(self) -> dict:
        return {
            "window_id": self.window_id,
            "u_offset": self.u_offset,
            "v_offset": self.v_offset,
            "display_w": self.display_w,
            "display_h": self.display_h,
        }


def auto_layout(
    surface: FlatSurface,
    windows: list[WindowDescriptor],
    margin: float = DEFAULT_MARGIN_M,
) -> list[LayoutSlot]:
    """Arrange windows in a ceil(sqrt(n))-column grid on the surface.

    Each window is scaled to the largest size that keeps its pixel aspect
    ratio and fits its grid cell minus the margin on every side. Slots are
    centered in their cells, never overlap, and stay inside the surface
    extent minus the margin. Input order is placement order (row-major,
    top row first), so layout is deterministic.
    """
    if margin < 0:
        raise SchemaViolation("margin must be >= 0")
    if not windows:
        return []

    n = len(windows)
    cols = math.ceil(math.sqrt(n))
    rows = math.ceil(n / cols)
    cell_w = surface.extent_u / cols
    cell_h = surface.extent_v / rows
    avail_w = cell_w - 2 * margin
    avail_h = cell_h - 2 * margin
    if avail_w <= 0 or avail_h <= 0:
        raise SurfaceTooSmall(
            f"surface {surface.id}: {cols}x{rows} grid cells collapse "
            f"after {margin} m margins"
        )

    slots = []
    for i, win in enumerate(windows):
        row, col = divmod(i, cols)
        display_w = min(avail_w, avail_h * win.aspect)
        display_h = display_w / win.aspect
        u_center = -surface.extent_u / 2 + (col + 0.5) * cell_w
        v_center = surface.extent_v / 2 - (row + 0.5) * cell_h
        slots.append(
            LayoutSlot(
                window_id=win.id,
                u_offset=u_center,
                v_offset=v_center,
                display_w=display_w,
                display_h=display_h,
            )
        )
    return slots


def layout_for_surface(
    ws: Workspace, surface: FlatSurface, margin: float = DEFAULT_MARGIN_M
) -> list[LayoutSlot]:
    """Layout of the windows currently placed on ``surface``."""
    placed = [ws.window(wid) for wid in ws.placements.get(surface.id, ())]
    return auto_layout(surface, placed, margin=margin)

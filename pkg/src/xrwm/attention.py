"""Behavioral signals: head-pose visibility scoring and pointing memory.

Visibility is the product of two clamped cosines: how close the surface
centroid sits to the user's forward axis, and how squarely the surface
faces the user. Pointing events live in a bounded time window so the
resolver only ever sees recent context; very short hovers are filtered
out downstream as pass-over noise.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ClockError, DegenerateGeometry, SchemaViolation
from .surfaces import FlatSurface

#: Hovers shorter than this (seconds) are treated as pass-over noise.
DEFAULT_MIN_HOVER_S = 0.3

#: How much pointing history (seconds) the resolver gets to see.
DEFAULT_BUFFER_WINDOW_S = 10.0

_UNIT_TOL = 1e-9


@dataclass(frozen=True)
class HeadPose:
    """Position plus unit forward direction at a moment in time."""

    position: tuple[float, float, float]
    forward: tuple[float, float, float]
    timestamp: float = 0.0

    def __post_init__(self) -> None:
        norm = float(np.linalg.norm(self.forward))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise SchemaViolation(f"forward must be unit length, |forward| = {norm}")


def normalized_forward(vec: tuple[float, float, float] | list) -> tuple[float, float, float]:
    """Normalize an arbitrary direction for HeadPose construction."""
    arr = np.asarray(vec, dtype=np.float64)
    norm = float(np.linalg.norm(arr))
    if norm < _UNIT_TOL:
        raise SchemaViolation("forward direction must be non-zero")
    return tuple(float(c) for c in arr / norm)


@dataclass(frozen=True)
class PointingEvent:
    """One completed hover over a window or surface."""

    identifier: str
    hover_duration: float
    timestamp: float

    def __post_init__(self) -> None:
        if not self.identifier:
            raise SchemaViolation("pointing event identifier must be non-empty")
        if self.hover_duration < 0:
            raise SchemaViolation("hover duration must be >= 0")


@dataclass(frozen=True)
class AttentionState:
    """Current head pose plus the time-windowed pointing buffer.

    The buffer is ordered oldest first and every event sits within
    ``buffer_window`` seconds of the newest one.
    """

    head: HeadPose
    pointing_buffer: tuple[PointingEvent, ...] = ()
    buffer_window: float = DEFAULT_BUFFER_WINDOW_S

    def with_head(self, head: HeadPose) -> "AttentionState":
        return replace(self, head=head)


def visibility_score(head: HeadPose, surface: FlatSurface) -> float:
    """Score in [0, 1] for how prominently ``surface`` sits in view.

    facing = how centered the surface is in the view direction;
    orientation = how squarely the surface plane faces the viewer.
    Surfaces behind the user, or seen edge-on/from behind, score 0.
    """
    pos = np.asarray(head.position, dtype=np.float64)
    centroid = np.asarray(surface.basis.centroid, dtype=np.float64)
    offset = centroid - pos
    dist = float(np.linalg.norm(offset))
    if dist < 1e-9:
        raise DegenerateGeometry("head position coincides with surface centroid")
    d = offset / dist

    facing = max(0.0, float(np.asarray(head.forward) @ d))
    orientation = max(0.0, float((-d) @ np.asarray(surface.basis.normal)))
    return min(1.0, facing * orientation)


def record_pointing(state: AttentionState, event: PointingEvent) -> AttentionState:
    """Append an event and evict everything older than the buffer window.

    The feed must be monotonic: an event timestamped before the newest
    buffered one raises ClockError.
    """
    if state.pointing_buffer and event.timestamp < state.pointing_buffer[-1].timestamp:
        raise ClockError(
            f"pointing timestamp {event.timestamp} precedes buffered "
            f"{state.pointing_buffer[-1].timestamp}"
        )
    cutoff = event.timestamp - state.buffer_window
    kept = tuple(e for e in state.pointing_buffer if e.timestamp >= cutoff)
    return replace(state, pointing_buffer=kept + (event,))


def salient_pointing(
    state: AttentionState, min_hover: float = DEFAULT_MIN_HOVER_S
) -> tuple[PointingEvent, ...]:
    """Buffered events that dwelled at least ``min_hover`` seconds, in order."""
    if min_hover < 0:
        raise SchemaViolation("min_hover must be >= 0")
    return tuple(e for e in state.pointing_buffer if e.hover_duration >= min_hover)

"""Engine tuning knobs, bundled so sessions and CLIs share one surface."""

from __future__ import annotations

from dataclasses import dataclass, field

from .attention import DEFAULT_BUFFER_WINDOW_S, DEFAULT_MIN_HOVER_S
from .surfaces import DEFAULT_ANGULAR_THRESHOLD_DEG, DEFAULT_MIN_AREA_M2
from .workspace import DEFAULT_MARGIN_M


@dataclass(frozen=True)
class EngineConfig:
    """Everything a session needs beyond its scene and window fixtures."""

    angular_threshold_deg: float = DEFAULT_ANGULAR_THRESHOLD_DEG
    min_area_m2: float = DEFAULT_MIN_AREA_M2
    min_hover_s: float = DEFAULT_MIN_HOVER_S
    buffer_window_s: float = DEFAULT_BUFFER_WINDOW_S
    layout_margin_m: float = DEFAULT_MARGIN_M
    #: pose used before the client posts a real one
    default_head_position: tuple[float, float, float] = (0.0, 1.6, 0.0)
    default_head_forward: tuple[float, float, float] = (0.0, 0.0, -1.0)

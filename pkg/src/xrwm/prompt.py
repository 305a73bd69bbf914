"""Prompt assembly: fixed system text plus a canonical input payload.

The system text ships as a versioned asset and is used byte-for-byte.
The input payload carries exactly four keys (``user_request``,
``flat_surfaces``, ``windows``, ``userPointingEvents``); it is serialized
with sorted keys and fixed float precision, so identical engine state
always produces byte-identical prompts.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files

from .attention import AttentionState, DEFAULT_MIN_HOVER_S, salient_pointing, visibility_score
from .errors import DegenerateGeometry, SchemaViolation
from .surfaces import FlatSurface, surface_descriptor
from .workspace import Workspace

PAYLOAD_KEYS = ("user_request", "flat_surfaces", "windows", "userPointingEvents")


@lru_cache(maxsize=1)
def default_system_text() -> str:
    """The shipped system-message asset, verbatim."""
    return files("xrwm").joinpath("assets/system_prompt.txt").read_text(encoding="utf-8")


def canonical_json(obj: object) -> str:
    """Deterministic JSON: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass(frozen=True)
class PromptDocument:
    """What a resolver backend receives: role text plus the input JSON."""

    system_text: str
    input_payload: dict

    def __post_init__(self) -> None:
        if tuple(sorted(self.input_payload)) != tuple(sorted(PAYLOAD_KEYS)):
            raise SchemaViolation(
                f"input payload must contain exactly {PAYLOAD_KEYS}"
            )

    def canonical_payload(self) -> str:
        return canonical_json(self.input_payload)

    def system_text_sha256(self) -> str:
        return hashlib.sha256(self.system_text.encode("utf-8")).hexdigest()


def guarded_visibility(attention: AttentionState, surface: FlatSurface) -> float:
    """Visibility score, treating a head sitting on the centroid as 0."""
    try:
        return visibility_score(attention.head, surface)
    except DegenerateGeometry:
        return 0.0


def build_prompt(
    request: str,
    surfaces: list[FlatSurface],
    ws: Workspace,
    attention: AttentionState,
    min_hover: float = DEFAULT_MIN_HOVER_S,
    system_text: str | None = None,
) -> PromptDocument:
    """Assemble the resolver input for one request.

    Surface visibility is computed from the current head pose; pointing
    events below the hover-noise threshold never reach the payload.
    """
    if not request:
        raise SchemaViolation("request text must be non-empty")

    flat_surfaces = [
        surface_descriptor(
            s,
            visibility=guarded_visibility(attention, s),
            current_windows=ws.placements.get(s.id, ()),
        )
        for s in surfaces
    ]
    events = [
        {"identifier": e.identifier, "hoverDuration": round(float(e.hover_duration), 3)}
        for e in salient_pointing(attention, min_hover)
    ]
    return PromptDocument(
        system_text=system_text if system_text is not None else default_system_text(),
        input_payload={
            "user_request": request,
            "flat_surfaces": flat_surfaces,
            "windows": ws.windows_json(),
            "userPointingEvents": events,
        },
    )

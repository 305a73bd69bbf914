"""Offline trace replay: feed a recorded interaction into a fresh session.

Trace files hold a JSON array of ``{"t": seconds, "kind": ..., "payload":
...}`` entries whose payloads mirror the live HTTP API one-to-one. All
timestamps come from the trace, never the wall clock, so the transcript
of a replay under the mock backend is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .attention import HeadPose, PointingEvent
from .config import EngineConfig
from .errors import ClockError, SchemaViolation
from .remote import ResolverBackend
from .session import Session, create_session

KINDS = ("head", "pointing", "request")


@dataclass(frozen=True)
class TraceEntry:
    t: float
    kind: str
    payload: dict


def validate_trace(doc: object) -> list[TraceEntry]:
    """Check shape and time ordering; errors name the offending entry."""
    if not isinstance(doc, list):
        raise SchemaViolation("trace must be a JSON array")
    entries: list[TraceEntry] = []
    prev_t: float | None = None
    for i, raw in enumerate(doc):
        if not isinstance(raw, dict):
            raise SchemaViolation(f"trace entry {i} must be an object")
        missing = {"t", "kind", "payload"} - raw.keys()
        if missing:
            raise SchemaViolation(f"trace entry {i} missing {sorted(missing)}")
        t = raw["t"]
        if isinstance(t, bool) or not isinstance(t, (int, float)):
            raise SchemaViolation(f"trace entry {i}: t must be a number")
        if raw["kind"] not in KINDS:
            raise SchemaViolation(
                f"trace entry {i}: kind must be one of {KINDS}, got {raw['kind']!r}"
            )
        if not isinstance(raw["payload"], dict):
            raise SchemaViolation(f"trace entry {i}: payload must be an object")
        if prev_t is not None and t < prev_t:
            raise ClockError(
                f"trace entry {i}: t={t} is earlier than previous entry's {prev_t}"
            )
        prev_t = float(t)
        entries.append(TraceEntry(t=float(t), kind=raw["kind"], payload=raw["payload"]))
    return entries


def load_trace(path: str | Path) -> list[TraceEntry]:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(str(p))
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"trace file {p} is not valid JSON: {exc}") from exc
    return validate_trace(doc)


def _vector3(entry_index: int, payload: dict, key: str) -> tuple[float, float, float]:
    value = payload.get(key)
    if (
        not isinstance(value, list)
        or len(value) != 3
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
    ):
        raise SchemaViolation(
            f"trace entry {entry_index}: {key} must be a list of 3 numbers"
        )
    return (float(value[0]), float(value[1]), float(value[2]))


def apply_entry(session: Session, index: int, entry: TraceEntry) -> None:
    """Feed one trace entry into the session, tagging errors by index."""
    p = entry.payload
    try:
        if entry.kind == "head":
            session.set_head(
                HeadPose(
                    position=_vector3(index, p, "position"),
                    forward=_vector3(index, p, "forward"),
                    timestamp=float(p.get("timestamp", entry.t)),
                )
            )
        elif entry.kind == "pointing":
            session.add_pointing(
                PointingEvent(
                    identifier=p.get("identifier", ""),
                    hover_duration=float(p.get("hoverDuration", -1.0)),
                    timestamp=float(p.get("timestamp", entry.t)),
                )
            )
        else:
            text = p.get("text")
            if not isinstance(text, str):
                raise SchemaViolation("request payload needs a string 'text'")
            session.request(text, timestamp=entry.t)
    except ClockError as exc:
        raise ClockError(f"trace entry {index}: {exc}") from exc
    except SchemaViolation as exc:
        raise SchemaViolation(f"trace entry {index}: {exc}") from exc


def replay_trace(
    scene_path: str | Path,
    windows_path: str | Path,
    trace: str | Path | list[TraceEntry],
    resolver: ResolverBackend,
    config: EngineConfig | None = None,
) -> dict:
    """Run a trace through a fresh session and return the transcript."""
    entries = trace if isinstance(trace, list) else load_trace(trace)
    session = create_session(
        scene_path, windows_path, resolver, config, session_id="replay"
    )
    for i, entry in enumerate(entries):
        apply_entry(session, i, entry)
    return {
        "scene_id": session.scene.scene_id,
        "backend": resolver.name,
        "trace_entries": len(entries),
        "records": [r.as_json() for r in session.records],
        "final_workspace": session.workspace.as_json(),
        "generation": session.generation,
    }


def transcript_text(transcript: dict) -> str:
    """The canonical byte form transcripts are compared in."""
    return json.dumps(transcript, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

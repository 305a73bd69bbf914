"""Session state: one room, one workspace, one attention stream.

A session owns the only mutable state in the system. All mutations go
through its lock, generation numbers increase by exactly one per
mutating call, and the event log is append-only: folding the logged
placement events over the initial workspace always reproduces the
current one.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .attention import AttentionState, HeadPose, PointingEvent
from .config import EngineConfig
from .errors import EngineError
from .plan import ActionPlan, execute_plan, parse_plan, validate_plan
from .prompt import PromptDocument, build_prompt, guarded_visibility
from .remote import ResolverBackend
from .scene import Scene, build_adjacency, load_scene, serialize_scene
from .surfaces import FlatSurface, display_names, extract_planar_regions, surface_descriptor
from .workspace import (
    Workspace,
    layout_for_surface,
    load_windows_file,
    new_workspace,
)


@dataclass(frozen=True)
class ResolutionRecord:
    """Audit entry for one request, success or failure."""

    request_text: str
    prompt: PromptDocument
    raw_response: str | None
    plan: ActionPlan | None
    error: dict | None
    applied: bool
    timestamp: float

    def as_json(self) -> dict:
        return {
            "request_text": self.request_text,
            "prompt": {
                "system_text_sha256": self.prompt.system_text_sha256(),
                "input_payload": self.prompt.input_payload,
            },
            "raw_response": self.raw_response,
            "plan": self.plan.as_json() if self.plan is not None else None,
            "error": self.error,
            "applied": self.applied,
            "timestamp": self.timestamp,
        }


class Session:
    """Single-writer owner of scene, surfaces, workspace, and attention."""

    def __init__(
        self,
        session_id: str,
        scene: Scene,
        surfaces: list[FlatSurface],
        workspace: Workspace,
        resolver: ResolverBackend,
        config: EngineConfig,
    ):
        self.session_id = session_id
        self.scene = scene
        self.surfaces = surfaces
        self.surface_by_id = {s.id: s for s in surfaces}
        self.display_names = display_names(surfaces)
        self.initial_workspace = workspace
        self.workspace = workspace
        self.resolver = resolver
        self.config = config
        self.attention = AttentionState(
            head=HeadPose(
                position=config.default_head_position,
                forward=config.default_head_forward,
                timestamp=0.0,
            ),
            buffer_window=config.buffer_window_s,
        )
        self.generation = 0
        self.event_log: list[dict] = []
        self.records: list[ResolutionRecord] = []
        self._cond = threading.Condition()

    # -- mutations ---------------------------------------------------------

    def set_head(self, pose: HeadPose) -> int:
        with self._cond:
            self.attention = self.attention.with_head(pose)
            return self._bump()

    def add_pointing(self, event: PointingEvent) -> int:
        from .attention import record_pointing

        with self._cond:
            self.attention = record_pointing(self.attention, event)
            return self._bump()

    def request(self, text: str, timestamp: float | None = None) -> dict:
        """Run the full pipeline for one verbal request.

        Resolver, parse, validation, and execution failures are recorded
        and returned as data; they never escape as exceptions.
        """
        with self._cond:
            ts = time.time() if timestamp is None else timestamp
            prompt = build_prompt(
                text,
                self.surfaces,
                self.workspace,
                self.attention,
                min_hover=self.config.min_hover_s,
            )

            raw: str | None = None
            plan: ActionPlan | None = None
            error: dict | None = None
            placement_events = []
            applied = False
            try:
                raw = self.resolver.resolve(prompt)
                plan = parse_plan(raw)
                resolved = validate_plan(plan, self.workspace, self.surfaces)
                new_ws, placement_events = execute_plan(resolved, self.workspace)
                self.workspace = new_ws
                applied = len(placement_events) > 0
            except EngineError as exc:
                error = exc.payload()

            record = ResolutionRecord(
                request_text=text,
                prompt=prompt,
                raw_response=raw,
                plan=plan,
                error=error,
                applied=applied,
                timestamp=ts,
            )
            self.records.append(record)
            generation = self._bump()
            for ev in placement_events:
                self.event_log.append(
                    {"generation": generation, "type": "placement", **ev.as_json()}
                )
            self.event_log.append(
                {"generation": generation, "type": "resolution", **record.as_json()}
            )

            return {
                "response": plan.response_text if plan else None,
                "actions": [a.as_triplet() for a in plan.actions] if plan else [],
                "applied": applied,
                "errors": [error] if error else [],
                "generation": generation,
            }

    def _bump(self) -> int:
        self.generation += 1
        self._cond.notify_all()
        return self.generation

    # -- reads -------------------------------------------------------------

    def events_since(self, since: int, timeout_s: float = 0.0) -> dict:
        """Events newer than ``since``; long-polls up to ``timeout_s``."""
        deadline = time.monotonic() + max(0.0, timeout_s)
        with self._cond:
            while True:
                fresh = [e for e in self.event_log if e["generation"] > since]
                if fresh or self.generation > since:
                    break
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    break
                self._cond.wait(timeout=remaining)
            return {"generation": self.generation, "events": fresh}

    def visibility_snapshot(self) -> dict[str, float]:
        with self._cond:
            return {
                s.id: round(guarded_visibility(self.attention, s), 6)
                for s in self.surfaces
            }

    def scene_payload(self) -> dict:
        """Everything the companion UI needs to draw the room."""
        with self._cond:
            vis = {
                s.id: round(guarded_visibility(self.attention, s), 6)
                for s in self.surfaces
            }
            surfaces = []
            layouts: dict[str, list[dict]] = {}
            for s in self.surfaces:
                descriptor = surface_descriptor(
                    s, vis[s.id], self.workspace.placements.get(s.id, ())
                )
                surfaces.append(
                    {
                        **descriptor,
                        "display_name": self.display_names[s.id],
                        "area_m2": s.area,
                        "extent_u": s.extent_u,
                        "extent_v": s.extent_v,
                        "centroid": list(s.basis.centroid),
                        "normal": list(s.basis.normal),
                        "u_axis": list(s.basis.u_axis),
                        "v_axis": list(s.basis.v_axis),
                        "face_indices": list(s.face_indices),
                    }
                )
                layouts[s.id] = [
                    slot.as_json()
                    for slot in layout_for_surface(
                        self.workspace, s, margin=self.config.layout_margin_m
                    )
                ]
            head = self.attention.head
            return {
                "session_id": self.session_id,
                "scene": serialize_scene(self.scene),
                "surfaces": surfaces,
                "layouts": layouts,
                "head": {
                    "position": list(head.position),
                    "forward": list(head.forward),
                    "timestamp": head.timestamp,
                },
                "generation": self.generation,
            }

    def workspace_payload(self) -> dict:
        with self._cond:
            return {**self.workspace.as_json(), "generation": self.generation}


def create_session(
    scene_path: str | Path,
    windows_path: str | Path,
    resolver: ResolverBackend,
    config: EngineConfig | None = None,
    session_id: str | None = None,
) -> Session:
    """Load fixtures, extract surfaces, and open a fresh session."""
    cfg = config or EngineConfig()
    scene = load_scene(scene_path)
    adjacency = build_adjacency(scene)
    surfaces = extract_planar_regions(
        scene,
        adjacency,
        angular_threshold_deg=cfg.angular_threshold_deg,
        min_area_m2=cfg.min_area_m2,
    )
    windows = load_windows_file(windows_path)
    workspace = new_workspace(windows, [s.id for s in surfaces])
    return Session(
        session_id=session_id or uuid.uuid4().hex[:12],
        scene=scene,
        surfaces=surfaces,
        workspace=workspace,
        resolver=resolver,
        config=cfg,
    )


class SessionStore:
    """Thread-safe registry of live sessions."""

    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.session_id] = session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._sessions)

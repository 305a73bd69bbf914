"""HTTP service exposing sessions to the companion UI.

Model misbehavior (bad JSON, unknown references) is data recorded on the
session and reported in the response body; only malformed HTTP input or
unknown session ids produce error statuses. Nothing here should ever
turn resolver output into a 500.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .attention import HeadPose, PointingEvent
from .config import EngineConfig
from .errors import ClockError, EngineError, SchemaViolation
from .remote import ResolverBackend
from .session import Session, SessionStore, create_session

#: Engine error kinds that map to something other than 400.
_STATUS_BY_KIND = {
    "clock_error": 409,
}


class CreateSessionBody(BaseModel):
    scene: str | None = None
    windows: str | None = None


class HeadBody(BaseModel):
    position: tuple[float, float, float]
    forward: tuple[float, float, float]
    timestamp: float = 0.0


class PointingBody(BaseModel):
    identifier: str
    hoverDuration: float
    timestamp: float


class RequestBody(BaseModel):
    text: str = Field(min_length=1)


def _error_response(exc: EngineError) -> JSONResponse:
    status = _STATUS_BY_KIND.get(exc.kind, 400)
    return JSONResponse(status_code=status, content={"error": exc.payload()})


def _not_found(session_id: str) -> JSONResponse:
    return JSONResponse(
        status_code=404,
        content={"error": {"kind": "unknown_session", "detail": session_id}},
    )


def create_app(
    resolver: ResolverBackend,
    default_scene: str | Path,
    default_windows: str | Path,
    config: EngineConfig | None = None,
) -> FastAPI:
    """Wire the service around one resolver backend and default fixtures."""
    cfg = config or EngineConfig()
    store = SessionStore()
    app = FastAPI(title="xrwm", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.exception_handler(EngineError)
    async def _engine_error(_request: Request, exc: EngineError) -> JSONResponse:
        return _error_response(exc)

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "backend": resolver.name}

    @app.post("/sessions", status_code=201)
    def make_session(body: CreateSessionBody | None = None) -> dict:
        scene_path = Path(body.scene) if body and body.scene else Path(default_scene)
        windows_path = (
            Path(body.windows) if body and body.windows else Path(default_windows)
        )
        try:
            session = create_session(scene_path, windows_path, resolver, cfg)
        except FileNotFoundError as exc:
            raise SchemaViolation(f"fixture file not found: {exc}") from exc
        store.add(session)
        return {"session_id": session.session_id, "generation": session.generation}

    def _session_or_none(session_id: str) -> Session | None:
        return store.get(session_id)

    @app.get("/sessions/{session_id}/scene")
    def scene(session_id: str):
        session = _session_or_none(session_id)
        if session is None:
            return _not_found(session_id)
        return session.scene_payload()

    @app.post("/sessions/{session_id}/head")
    def head(session_id: str, body: HeadBody):
        session = _session_or_none(session_id)
        if session is None:
            return _not_found(session_id)
        pose = HeadPose(
            position=body.position, forward=body.forward, timestamp=body.timestamp
        )
        generation = session.set_head(pose)
        return {"generation": generation}

    @app.post("/sessions/{session_id}/pointing")
    def pointing(session_id: str, body: PointingBody):
        session = _session_or_none(session_id)
        if session is None:
            return _not_found(session_id)
        event = PointingEvent(
            identifier=body.identifier,
            hover_duration=body.hoverDuration,
            timestamp=body.timestamp,
        )
        try:
            generation = session.add_pointing(event)
        except ClockError as exc:
            return _error_response(exc)
        return {"generation": generation}

    @app.post("/sessions/{session_id}/request")
    def request(session_id: str, body: RequestBody):
        session = _session_or_none(session_id)
        if session is None:
            return _not_found(session_id)
        return session.request(body.text)

    @app.get("/sessions/{session_id}/workspace")
    def workspace(session_id: str):
        session = _session_or_none(session_id)
        if session is None:
            return _not_found(session_id)
        return session.workspace_payload()

    @app.get("/sessions/{session_id}/events")
    def events(
        session_id: str,
        since: int = Query(default=0, ge=0),
        timeout_s: float = Query(default=0.0, ge=0.0, le=30.0),
    ):
        session = _session_or_none(session_id)
        if session is None:
            return _not_found(session_id)
        return session.events_since(since, timeout_s=timeout_s)

    return app

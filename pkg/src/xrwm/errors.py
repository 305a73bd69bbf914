"""Exception types shared across the engine.

Every error the engine raises deliberately derives from :class:`EngineError`
so service layers can convert them into structured payloads instead of 500s.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine-raised errors."""

    #: short machine-readable tag used in API error payloads
    kind = "engine_error"

    def payload(self) -> dict:
        return {"kind": self.kind, "detail": str(self)}


class SchemaViolation(EngineError):
    """A document is missing fields or has wrongly typed values."""

    kind = "schema_violation"


class GeometryError(EngineError):
    """Mesh indices or geometry are invalid (e.g. out-of-range face index)."""

    kind = "geometry_error"


class LabelError(EngineError):
    """A semantic label is outside the closed vocabulary."""

    kind = "label_error"


class ParamError(EngineError):
    """An algorithm parameter is outside its documented range."""

    kind = "param_error"


class DegenerateGeometry(EngineError):
    """Input geometry too degenerate to process (collinear points, zero span)."""

    kind = "degenerate_geometry"


class ClockError(EngineError):
    """Timestamps fed to a monotonic consumer went backwards."""

    kind = "clock_error"


class UnknownWindow(EngineError):
    kind = "unknown_window"


class UnknownSurface(EngineError):
    kind = "unknown_surface"


class MismatchedSurface(EngineError):
    """A removal named a surface the window is not actually on."""

    kind = "mismatched_surface"


class SurfaceTooSmall(EngineError):
    """Layout cells collapse to nothing after margins."""

    kind = "surface_too_small"


class MalformedJson(EngineError):
    """Resolver output was not parseable JSON.

    ``attempts`` carries the raw text of every failed attempt so the event
    log can show exactly what the model said.
    """

    kind = "malformed_json"

    def __init__(self, message: str, attempts: list[str] | None = None):
        super().__init__(message)
        self.attempts: list[str] = list(attempts or [])

    def payload(self) -> dict:
        out = super().payload()
        if self.attempts:
            out["attempts"] = list(self.attempts)
        return out


class UnknownVerb(EngineError):
    """An action used a verb outside the supported set."""

    kind = "unknown_verb"


class UnresolvedWindow(EngineError):
    """A plan referenced a window no id or unique name matches."""

    kind = "unresolved_window"


class UnresolvedSurface(EngineError):
    """A plan referenced a surface no id, semantic, or display name matches."""

    kind = "unresolved_surface"


class AmbiguousRef(EngineError):
    """A plan reference matched several entities; candidates are attached."""

    kind = "ambiguous_ref"

    def __init__(self, message: str, candidates: list[str]):
        super().__init__(message)
        self.candidates = list(candidates)

    def payload(self) -> dict:
        out = super().payload()
        out["candidates"] = list(self.candidates)
        return out


class ConfigError(EngineError):
    kind = "config_error"


class NetworkError(EngineError):
    """Transport-level failure talking to a remote resolver."""

    kind = "network_error"


class AuthError(EngineError):
    """Remote resolver rejected our credentials (401/403)."""

    kind = "auth_error"


class ProviderError(EngineError):
    """Remote resolver returned a server-side error (5xx)."""

    kind = "provider_error"

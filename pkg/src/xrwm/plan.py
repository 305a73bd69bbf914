"""Action plans: parsing resolver output, reference resolution, execution.

Resolver output is a JSON object with exactly two keys::

    {"response": "<text for the user>", "actions": [["place", "w", "s"], ...]}

Parsing is strict (closed verb set, exact shape) but tolerates a
surrounding markdown code fence, since language models love emitting
those. Reference resolution maps loose window/surface references (names,
semantics) onto ids before execution; execution is all-or-nothing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import (
    AmbiguousRef,
    MalformedJson,
    SchemaViolation,
    UnknownVerb,
    UnresolvedSurface,
    UnresolvedWindow,
)
from .surfaces import FlatSurface, display_names
from .workspace import PlacementEvent, Workspace, place_window, remove_window

VERBS = ("place", "remove")

_FENCE_RE = re.compile(r"^\s*```[a-zA-Z0-9_-]*\s*\n?(.*?)\n?\s*```\s*$", re.DOTALL)


@dataclass(frozen=True)
class Action:
    """One placement command: verb plus window and surface references."""

    verb: str
    window_ref: str
    surface_ref: str

    def __post_init__(self) -> None:
        if self.verb not in VERBS:
            raise UnknownVerb(f"unsupported verb {self.verb!r}; expected one of {VERBS}")

    def as_triplet(self) -> list[str]:
        return [self.verb, self.window_ref, self.surface_ref]


@dataclass(frozen=True)
class ActionPlan:
    """Parsed resolver response: user-facing text plus ordered actions."""

    response_text: str
    actions: tuple[Action, ...]

    def as_json(self) -> dict:
        return {
            "response": self.response_text,
            "actions": [a.as_triplet() for a in self.actions],
        }


def strip_code_fence(raw: str) -> str:
    m = _FENCE_RE.match(raw)
    return m.group(1) if m else raw


def parse_plan(raw: str) -> ActionPlan:
    """Parse raw resolver text into an ActionPlan, strictly."""
    text = strip_code_fence(raw)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"resolver output is not JSON: {exc}", attempts=[raw]) from exc

    if not isinstance(doc, dict):
        raise SchemaViolation("plan must be a JSON object")
    if set(doc) != {"response", "actions"}:
        raise SchemaViolation(
            f"plan must have exactly the keys 'response' and 'actions', got {sorted(doc)}"
        )
    if not isinstance(doc["response"], str):
        raise SchemaViolation("plan 'response' must be a string")
    if not isinstance(doc["actions"], list):
        raise SchemaViolation("plan 'actions' must be an array")

    actions = []
    for i, triplet in enumerate(doc["actions"]):
        if (
            not isinstance(triplet, list)
            or len(triplet) != 3
            or not all(isinstance(x, str) for x in triplet)
        ):
            raise SchemaViolation(
                f"actions[{i}] must be a 3-element array of strings, got {triplet!r}"
            )
        actions.append(Action(verb=triplet[0], window_ref=triplet[1], surface_ref=triplet[2]))

    return ActionPlan(response_text=doc["response"], actions=tuple(actions))


def serialize_plan(plan: ActionPlan) -> str:
    """Plan back to its wire shape (response first, stable formatting)."""
    return json.dumps(plan.as_json(), separators=(", ", ": "), ensure_ascii=False)


def _resolve_window(ref: str, ws: Workspace) -> str:
    if ref in ws.windows:
        return ref
    matches = [w.id for w in ws.windows.values() if w.name.lower() == ref.lower()]
    if len(matches) == 1:
        return matches[0]
    if len(matches) > 1:
        raise AmbiguousRef(f"window reference {ref!r} matches several windows", matches)
    raise UnresolvedWindow(f"no window id or name matches {ref!r}")


def _resolve_surface(ref: str, surfaces: list[FlatSurface]) -> str:
    by_id = {s.id for s in surfaces}
    if ref in by_id:
        return ref
    semantic_matches = [s.id for s in surfaces if s.semantic == ref.strip().lower()]
    if len(semantic_matches) == 1:
        return semantic_matches[0]
    if len(semantic_matches) > 1:
        raise AmbiguousRef(
            f"surface reference {ref!r} matches several {ref.strip().lower()!r} surfaces",
            semantic_matches,
        )
    names = display_names(surfaces)
    name_matches = [sid for sid, name in names.items() if name.lower() == ref.strip().lower()]
    if len(name_matches) == 1:
        return name_matches[0]
    if len(name_matches) > 1:
        raise AmbiguousRef(f"surface reference {ref!r} matches several surfaces", name_matches)
    raise UnresolvedSurface(f"no surface id, semantic, or display name matches {ref!r}")


def validate_plan(
    plan: ActionPlan, ws: Workspace, surfaces: list[FlatSurface]
) -> ActionPlan:
    """Resolve every reference to an id, or reject the whole plan.

    Window references resolve by exact id first, then unique
    case-insensitive name; surface references by exact id, then unique
    semantic label, then unique display name (``cabinet-1``). Nothing is
    partially resolved: the first failure aborts validation.
    """
    resolved = []
    for action in plan.actions:
        resolved.append(
            Action(
                verb=action.verb,
                window_ref=_resolve_window(action.window_ref, ws),
                surface_ref=_resolve_surface(action.surface_ref, surfaces),
            )
        )
    return ActionPlan(response_text=plan.response_text, actions=tuple(resolved))


def execute_plan(
    plan: ActionPlan, ws: Workspace
) -> tuple[Workspace, list[PlacementEvent]]:
    """Apply a validated plan in order, atomically.

    Workspace values are immutable, so an error mid-plan simply propagates
    and the caller keeps its pre-plan state untouched.
    """
    events = []
    current = ws
    for action in plan.actions:
        if action.verb == "place":
            current = place_window(current, action.window_ref, action.surface_ref)
        else:
            current = remove_window(current, action.window_ref, action.surface_ref)
        events.append(
            PlacementEvent(
                verb=action.verb,
                window_id=action.window_ref,
                surface_id=action.surface_ref,
            )
        )
    return current, events

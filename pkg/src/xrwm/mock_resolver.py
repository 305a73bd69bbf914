"""Deterministic offline resolver.

Stands in for the remote language model so the whole pipeline runs
reproducibly with no network. The rule cascade mirrors the behavioral
constraints the system prompt gives the real model:

1. goal mapping: a configurable keyword table maps request phrases to
   application names ("message" -> Chat), possibly several per phrase;
2. deictic resolution: "this/that" selects the pointed-at window with the
   longest hover (ties: most recent), "here/there" the pointed-at
   surface, never a window's own current surface;
3. fallback surface: the highest-visibility surface that is not the
   window's current one (ties: larger area, then lexicographic id);
4. windows already sitting on their chosen surface produce no action.

The resolver never raises: when nothing resolves it returns a plan with
empty actions and an explanatory response.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from .errors import SchemaViolation
from .prompt import PromptDocument

_WINDOW_DEIXIS = re.compile(r"\b(this|that)\b")
_SURFACE_DEIXIS = re.compile(r"\b(here|there)\b")
_SIZE_RE = re.compile(r"^(\d+)x(\d+)$")


@dataclass(frozen=True)
class GoalRule:
    keywords: tuple[str, ...]
    applications: tuple[str, ...]


def parse_goal_rules(doc: dict) -> tuple[GoalRule, ...]:
    if not isinstance(doc, dict) or not isinstance(doc.get("rules"), list):
        raise SchemaViolation("goal map must be an object with a 'rules' array")
    rules = []
    for i, entry in enumerate(doc["rules"]):
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("keywords"), list)
            or not isinstance(entry.get("applications"), list)
            or not all(isinstance(k, str) and k for k in entry["keywords"])
            or not all(isinstance(a, str) and a for a in entry["applications"])
        ):
            raise SchemaViolation(
                f"goal map rules[{i}] needs non-empty 'keywords' and 'applications' lists"
            )
        rules.append(
            GoalRule(
                keywords=tuple(k.lower() for k in entry["keywords"]),
                applications=tuple(entry["applications"]),
            )
        )
    return tuple(rules)


@lru_cache(maxsize=1)
def default_goal_rules() -> tuple[GoalRule, ...]:
    doc = json.loads(
        files("xrwm").joinpath("assets/goal_map.json").read_text(encoding="utf-8")
    )
    return parse_goal_rules(doc)


def load_goal_rules(path: str | Path) -> tuple[GoalRule, ...]:
    return parse_goal_rules(json.loads(Path(path).read_text(encoding="utf-8")))


def _surface_area_cm2(surface: dict) -> int:
    m = _SIZE_RE.match(surface.get("size", ""))
    return int(m.group(1)) * int(m.group(2)) if m else 0


def _best_event(events: list[dict], candidate_ids: set[str]) -> dict | None:
    """Longest hover wins; ties go to the most recent (later) event."""
    best: dict | None = None
    best_key: tuple[float, int] | None = None
    for i, e in enumerate(events):
        if e["identifier"] not in candidate_ids:
            continue
        key = (float(e["hoverDuration"]), i)
        if best_key is None or key > best_key:
            best, best_key = e, key
    return best


def _fallback_surface(surfaces: list[dict], exclude_id: str) -> dict | None:
    candidates = [s for s in surfaces if s["id"] != exclude_id]
    if not candidates:
        return None
    return min(
        candidates,
        key=lambda s: (-float(s["visibility"]), -_surface_area_cm2(s), s["id"]),
    )


class MockResolver:
    """ResolverBackend that replays the rule cascade above, offline."""

    name = "mock"

    def __init__(self, rules: tuple[GoalRule, ...] | None = None):
        self.rules = rules if rules is not None else default_goal_rules()

    def resolve(self, prompt: PromptDocument) -> str:
        payload = prompt.input_payload
        request = payload["user_request"].lower()
        windows: list[dict] = payload["windows"]
        surfaces: list[dict] = payload["flat_surfaces"]
        events: list[dict] = payload["userPointingEvents"]

        window_ids = {w["id"] for w in windows}
        surface_ids = {s["id"] for s in surfaces}

        # 1. goal mapping
        apps: list[str] = []
        for rule in self.rules:
            if any(kw in request for kw in rule.keywords):
                for app in rule.applications:
                    if app not in apps:
                        apps.append(app)

        targets: list[dict] = []
        missing_apps: list[str] = []
        for app in apps:
            matches = [w for w in windows if w["name"].lower() == app.lower()]
            if matches:
                targets.append(matches[0])
            else:
                missing_apps.append(app)

        # 2. deictic window selection when no goal matched
        wants_window_deixis = bool(_WINDOW_DEIXIS.search(request))
        wants_surface_deixis = bool(_SURFACE_DEIXIS.search(request))
        if not targets and wants_window_deixis:
            ev = _best_event(events, window_ids)
            if ev:
                targets.append(next(w for w in windows if w["id"] == ev["identifier"]))

        if not targets:
            if missing_apps:
                reason = "No window available for " + ", ".join(missing_apps) + "."
            elif wants_window_deixis:
                reason = (
                    "I could not tell which window you meant. "
                    "Please point at a window while asking."
                )
            else:
                reason = (
                    "I could not match that request to any window. "
                    "Try stating a goal or pointing at a window."
                )
            return self._emit(reason, [])

        # 3. pick a surface per target window
        actions: list[list[str]] = []
        placed_phrases: list[str] = []
        skipped: list[str] = []
        for win in targets:
            current = win["location"]
            chosen: dict | None = None
            if wants_surface_deixis:
                ev = _best_event(events, surface_ids - {current})
                if ev:
                    chosen = next(s for s in surfaces if s["id"] == ev["identifier"])
            if chosen is None:
                chosen = _fallback_surface(surfaces, exclude_id=current)
            if chosen is None or chosen["id"] == current:
                skipped.append(win["name"])
                continue
            actions.append(["place", win["id"], chosen["id"]])
            placed_phrases.append(f"{win['name']} on the {chosen['semantic']}")

        parts: list[str] = []
        if placed_phrases:
            parts.append("Placing " + ", ".join(placed_phrases) + ".")
        if skipped:
            parts.append("No new surface available for " + ", ".join(skipped) + ".")
        if missing_apps:
            parts.append("No window available for " + ", ".join(missing_apps) + ".")
        if not parts:
            parts.append("Nothing to do.")
        return self._emit(" ".join(parts), actions)

    @staticmethod
    def _emit(response: str, actions: list[list[str]]) -> str:
        return json.dumps(
            {"response": response, "actions": actions},
            separators=(", ", ": "),
            ensure_ascii=False,
        )

"""Task-centric window management over labeled scene meshes.

The engine turns a labeled triangle mesh into flat-surface descriptors,
assembles resolver prompts from workspace and attention state, executes
the returned placement plans, and exposes the loop over HTTP for a
companion UI.
"""

from __future__ import annotations

from .attention import AttentionState, HeadPose, PointingEvent, visibility_score
from .config import EngineConfig
from .errors import EngineError
from .labels import SemanticLabel, VOCABULARY, canonical_label
from .mock_resolver import MockResolver
from .plan import Action, ActionPlan, execute_plan, parse_plan, validate_plan
from .prompt import PromptDocument, build_prompt
from .remote import RemoteConfig, RemoteResolver
from .scene import Scene, build_adjacency, load_scene, parse_scene
from .session import Session, create_session
from .surfaces import FlatSurface, PlaneBasis, extract_planar_regions, fit_plane_pca
from .workspace import Workspace, WindowDescriptor, new_workspace, place_window, remove_window

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionPlan",
    "AttentionState",
    "EngineConfig",
    "EngineError",
    "FlatSurface",
    "HeadPose",
    "MockResolver",
    "PlaneBasis",
    "PointingEvent",
    "PromptDocument",
    "RemoteConfig",
    "RemoteResolver",
    "Scene",
    "SemanticLabel",
    "Session",
    "VOCABULARY",
    "WindowDescriptor",
    "Workspace",
    "__version__",
    "build_adjacency",
    "build_prompt",
    "canonical_label",
    "create_session",
    "execute_plan",
    "extract_planar_regions",
    "fit_plane_pca",
    "load_scene",
    "parse_plan",
    "parse_scene",
    "place_window",
    "remove_window",
    "new_workspace",
    "validate_plan",
    "visibility_score",
]

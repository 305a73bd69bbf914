"""Closed semantic label vocabulary and label values.

The vocabulary has two tiers: a small set of classes that arrive with
automatically segmented room meshes, and a larger extension set that only
manual annotation can assign. Label matching is case-insensitive on input
and canonicalized to a single lowercase spelling on output.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import LabelError

#: Classes emitted by automatic room segmentation.
AUTOMATIC_LABELS: tuple[str, ...] = (
    "wall",
    "floor",
    "cabinet",
    "bed",
    "chair",
    "sofa",
    "table",
    "door",
    "window",
    "bookshelf",
)

#: Extension classes only manual annotation can assign.
MANUAL_LABELS: tuple[str, ...] = (
    "picture",
    "counter",
    "blinds",
    "desk",
    "shelves",
    "curtain",
    "dresser",
    "pillow",
    "mirror",
    "floor mat",
    "clothes",
    "ceiling",
    "books",
    "refrigerator",
    "television",
    "paper",
    "towel",
    "shower",
    "box",
    "whiteboard",
    "person",
    "nightstand",
    "toilet",
    "sink",
    "lamp",
    "bathtub",
    "bag",
    "other structure",
    "other furniture",
    "other prop",
)

#: Full vocabulary in canonical order; used for deterministic tie-breaking.
VOCABULARY: tuple[str, ...] = AUTOMATIC_LABELS + MANUAL_LABELS

#: Rank of each label in VOCABULARY (lower = earlier).
VOCABULARY_RANK: dict[str, int] = {name: i for i, name in enumerate(VOCABULARY)}

_CANONICAL: dict[str, str] = {name.lower(): name for name in VOCABULARY}


def canonical_label(name: str) -> str:
    """Map ``name`` (any case) to its canonical spelling.

    Raises LabelError for names outside the vocabulary.
    """
    key = name.strip().lower()
    try:
        return _CANONICAL[key]
    except KeyError:
        raise LabelError(
            f"label {name!r} is not in the {len(VOCABULARY)}-entry vocabulary"
        ) from None


class LabelOrigin(str, Enum):
    AUTOMATIC = "automatic"
    MANUAL = "manual"


@dataclass(frozen=True)
class SemanticLabel:
    """A vocabulary label plus how it was assigned.

    Automatic origin is only legal for labels automatic segmentation can
    actually produce.
    """

    name: str
    origin: LabelOrigin

    def __post_init__(self) -> None:
        canon = canonical_label(self.name)
        object.__setattr__(self, "name", canon)
        if self.origin is LabelOrigin.AUTOMATIC and canon not in AUTOMATIC_LABELS:
            raise LabelError(
                f"label {canon!r} cannot have automatic origin; "
                "it is in the manual extension set"
            )


def label_from_name(name: str) -> SemanticLabel:
    """Build a label, inferring origin from which tier the name sits in."""
    canon = canonical_label(name)
    origin = (
        LabelOrigin.AUTOMATIC if canon in AUTOMATIC_LABELS else LabelOrigin.MANUAL
    )
    return SemanticLabel(canon, origin)

#!/usr/bin/env python3
"""Regenerate the bundled demo fixtures and the golden transcript.

Run from the repo root after changing anything in xrwm.demo or the mock
resolver, then commit the result. tests/test_replay.py fails if the
committed files drift from what this script produces.
"""

from __future__ import annotations

import sys
from pathlib import Path

from xrwm.demo import write_demo_fixtures
from xrwm.mock_resolver import MockResolver
from xrwm.replay import replay_trace, transcript_text

ASSET_DIR = Path(__file__).resolve().parent.parent / "src" / "xrwm" / "assets" / "demo"


def main() -> int:
    written = write_demo_fixtures(ASSET_DIR)
    transcript = replay_trace(
        written["scene.json"],
        written["windows.json"],
        written["trace_put_that_there.json"],
        MockResolver(),
    )
    golden = ASSET_DIR / "transcript_put_that_there.json"
    golden.write_text(transcript_text(transcript), encoding="utf-8")
    written["transcript_put_that_there.json"] = golden
    for name, path in sorted(written.items()):
        print(f"wrote {name} -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

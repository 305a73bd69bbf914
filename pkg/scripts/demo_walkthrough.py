#!/usr/bin/env python3
"""Drive the whole engine in-process on the demo room and narrate it.

Useful as a quick smoke check and as executable documentation of the
session API; nothing here touches the network.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from xrwm.attention import HeadPose, PointingEvent
from xrwm.demo import default_scene_path, default_windows_path, demo_surface_id
from xrwm.mock_resolver import MockResolver
from xrwm.session import create_session


def show_workspace(session) -> None:
    for w in session.workspace.windows.values():
        where = (
            session.display_names.get(w.location, w.location)
            if w.location != "none"
            else "unplaced"
        )
        print(f"    {w.name:<14} {w.size_str:>8}px  {where}")


def main() -> None:
    session = create_session(
        default_scene_path(), default_windows_path(), MockResolver(), session_id="demo"
    )
    print(f"scene {session.scene.scene_id!r}: {len(session.surfaces)} flat surfaces")
    for s in session.surfaces:
        name = session.display_names[s.id]
        print(f"    {name:<12} {s.area:6.2f} m2  normal {tuple(round(c, 2) for c in s.basis.normal)}")

    session.set_head(HeadPose((0.0, 1.6, 0.0), (0.0, 0.0, -1.0), timestamp=0.0))
    vis = session.visibility_snapshot()
    best = max(vis, key=vis.get)
    print(f"\nlooking down -z; most visible: {session.display_names[best]} ({vis[best]:.3f})")

    print('\n> "I need to send a message"')
    result = session.request("I need to send a message")
    print(f"  {result['response']}")

    cabinet = demo_surface_id("cabinet")
    session.add_pointing(PointingEvent("w-maps", 1.5, timestamp=1.0))
    session.add_pointing(PointingEvent(cabinet, 1.2, timestamp=2.0))
    print('\n> (pointing at Google Maps, then the cabinet) "Can you put that there?"')
    result = session.request("Can you put that there?")
    print(f"  {result['response']}")

    print('\n> "I am planning a trip"')
    result = session.request("I am planning a trip")
    print(f"  {result['response']}")

    print(f"\nworkspace after {session.generation} mutations:")
    show_workspace(session)
    print(f"\nevent log: {len(session.event_log)} entries, "
          f"{sum(1 for e in session.event_log if e['type'] == 'placement')} placements")


if __name__ == "__main__":
    main()

"""Command-line entry points.

Subcommands: ``extract-surfaces`` (scene file → surface descriptors),
``serve`` (HTTP service), ``replay`` (trace file → transcript), and
``make-demo`` (write the bundled demo fixtures somewhere editable).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import EngineConfig
from .demo import (
    default_scene_path,
    default_trace_path,
    default_windows_path,
    write_demo_fixtures,
)
from .errors import EngineError
from .mock_resolver import MockResolver
from .remote import RemoteConfig, RemoteResolver, ResolverBackend
from .scene import build_adjacency, load_scene
from .surfaces import (
    DEFAULT_ANGULAR_THRESHOLD_DEG,
    DEFAULT_MIN_AREA_M2,
    display_names,
    extract_planar_regions,
    surface_descriptor,
)


def _build_resolver(args: argparse.Namespace) -> ResolverBackend:
    if args.backend == "mock":
        return MockResolver()
    return RemoteResolver(
        RemoteConfig(
            base_url=args.base_url,
            model=args.model,
            timeout_s=args.timeout_s,
        )
    )


def _add_backend_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--backend", choices=("mock", "remote"), default="mock",
        help="plan resolver: deterministic mock or remote chat-completions",
    )
    parser.add_argument("--model", default="gpt-4")
    parser.add_argument("--base-url", default="https://api.openai.com/v1")
    parser.add_argument("--timeout-s", type=float, default=30.0)


def _add_extraction_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--threshold-deg", type=float, default=DEFAULT_ANGULAR_THRESHOLD_DEG,
        help="max angle between a face normal and its region seed",
    )
    parser.add_argument(
        "--min-area", type=float, default=DEFAULT_MIN_AREA_M2,
        help="discard regions smaller than this many square meters",
    )


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_extract_surfaces(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    surfaces = extract_planar_regions(
        scene,
        build_adjacency(scene),
        angular_threshold_deg=args.threshold_deg,
        min_area_m2=args.min_area,
    )
    names = display_names(surfaces)
    doc = {
        "scene_id": scene.scene_id,
        "flat_surfaces": [
            surface_descriptor(s, visibility=0.0, current_windows=()) for s in surfaces
        ],
        "geometry": {
            s.id: {
                "display_name": names[s.id],
                "centroid": list(s.basis.centroid),
                "normal": list(s.basis.normal),
                "u_axis": list(s.basis.u_axis),
                "v_axis": list(s.basis.v_axis),
                "extent_u": s.extent_u,
                "extent_v": s.extent_v,
                "area_m2": s.area,
                "face_indices": list(s.face_indices),
            }
            for s in surfaces
        },
    }
    _write_or_print(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .webapp import create_app

    app = create_app(
        resolver=_build_resolver(args),
        default_scene=args.scene,
        default_windows=args.windows,
        config=EngineConfig(
            angular_threshold_deg=args.threshold_deg,
            min_area_m2=args.min_area,
        ),
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    from .replay import replay_trace, transcript_text

    transcript = replay_trace(
        scene_path=args.scene,
        windows_path=args.windows,
        trace=args.trace,
        resolver=_build_resolver(args),
        config=EngineConfig(
            angular_threshold_deg=args.threshold_deg,
            min_area_m2=args.min_area,
        ),
    )
    _write_or_print(transcript_text(transcript), args.out)
    return 0


def cmd_make_demo(args: argparse.Namespace) -> int:
    written = write_demo_fixtures(args.out_dir)
    for name, path in written.items():
        print(f"wrote {name} -> {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xrwm",
        description="task-centric window management over labeled scene meshes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser(
        "extract-surfaces", help="extract flat surfaces from a scene file"
    )
    p_extract.add_argument("--scene", required=True)
    _add_extraction_args(p_extract)
    p_extract.add_argument("--out", default=None, help="output path (default stdout)")
    p_extract.set_defaults(func=cmd_extract_surfaces)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--scene", default=str(default_scene_path()))
    p_serve.add_argument("--windows", default=str(default_windows_path()))
    _add_backend_args(p_serve)
    _add_extraction_args(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    p_replay = sub.add_parser("replay", help="replay a recorded trace")
    p_replay.add_argument("--trace", default=str(default_trace_path()))
    p_replay.add_argument("--scene", default=str(default_scene_path()))
    p_replay.add_argument("--windows", default=str(default_windows_path()))
    _add_backend_args(p_replay)
    _add_extraction_args(p_replay)
    p_replay.add_argument("--out", default=None, help="output path (default stdout)")
    p_replay.set_defaults(func=cmd_replay)

    p_demo = sub.add_parser("make-demo", help="write demo fixtures to a directory")
    p_demo.add_argument("--out-dir", default="demo")
    p_demo.set_defaults(func=cmd_make_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"error: {json.dumps(exc.payload())}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

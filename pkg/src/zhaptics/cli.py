"""Command-line entry points.

    zhaptics run <script.gfs> [--rate HZ] [--out DIR] [--frames]
    zhaptics check <script.gfs>
    zhaptics serve [--port N] [--realtime|--no-realtime] [script.gfs]
    zhaptics demo figure4 [--out DIR]

Exit codes: 0 ok, 1 script diagnostics, 2 runtime error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import demo as demo_scenes
from .errors import SceneError
from .runtime import Session, config_from_script, export
from .script import loads, try_parse, validate


def _read_script(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)
    return text


def _load_or_report(path: str):
    text = _read_script(path)
    script, diags = try_parse(text)
    diags = diags + validate(script)
    if diags:
        for d in diags:
            print(f"{path}:{d}", file=sys.stderr)
        raise SystemExit(1)
    return script


def cmd_run(args) -> int:
    script = _load_or_report(args.script)
    config = config_from_script(script, rate=args.rate)
    session = Session(script, config)
    try:
        recording = session.run()
    except SceneError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    try:
        written = export(recording, args.out, frames=args.frames)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


def cmd_check(args) -> int:
    _load_or_report(args.script)
    print(f"{args.script}: ok")
    return 0


def cmd_serve(args) -> int:
    from .runtime import SessionConfig
    from .server import serve

    if args.script:
        script = _load_or_report(args.script)
        config = config_from_script(script, rate=args.rate)
    else:
        script = None
        config = SessionConfig(duration=math.inf,
                               rate=args.rate if args.rate else 1000.0)
    session = Session(script, config, collect=False)
    try:
        serve(session, port=args.port, realtime=args.realtime)
    except SystemExit:
        raise
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_demo(args) -> int:
    builder = demo_scenes.DEMOS.get(args.name)
    if builder is None:
        known = ", ".join(sorted(demo_scenes.DEMOS))
        print(f"error: unknown demo {args.name!r} (known: {known})",
              file=sys.stderr)
        return 2
    text = builder()
    script = loads(text)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.name}.gfs").write_text(text, encoding="utf-8")
        recording = Session(script).run()
        written = export(recording, out, frames=True)
    except (OSError, SceneError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out / f"{args.name}.gfs")
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zhaptics",
        description="Fixed-rate haptic scene engine for a simulated "
                    "up/down fingertip axis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scene script headless")
    p_run.add_argument("script", help="scene script (.gfs)")
    p_run.add_argument("--rate", type=float, default=None, help="tick rate Hz")
    p_run.add_argument("--out", default="out", help="output directory")
    p_run.add_argument("--frames", action="store_true",
                       help="also export frames.json")
    p_run.set_defaults(func=cmd_run)

    p_check = sub.add_parser("check", help="parse and validate only")
    p_check.add_argument("script")
    p_check.set_defaults(func=cmd_check)

    p_serve = sub.add_parser("serve", help="live session over WebSocket")
    p_serve.add_argument("script", nargs="?", default=None)
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--rate", type=float, default=None)
    p_serve.add_argument("--realtime", action=argparse.BooleanOptionalAction,
                         default=True, help="pace ticks to wall clock")
    p_serve.set_defaults(func=cmd_serve)

    p_demo = sub.add_parser("demo", help="build and run a bundled scene")
    p_demo.add_argument("name", help="demo name (figure4)")
    p_demo.add_argument("--out", default="out", help="output directory")
    p_demo.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Replay mode executes a script against an in-process session and emits
canonical JSON; serve mode runs the HTTP service.

  duovis --data data/cars.csv --script assets/walkthrough.json \
         --emit-spec out/spec.json --assert assets/walkthrough_expected.json
  duovis --serve --port 8878    # datasets resolve under $LIGER_DATA_DIR
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dataset import load_csv
from .errors import EngineError, ScriptError
from .replay import assert_outputs, emit_json, load_script, run_script


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duovis",
        description="Replay visualization-construction scripts or serve the HTTP API.",
    )
    parser.add_argument("--data", metavar="FILE", help="dataset CSV for replay mode")
    parser.add_argument("--script", metavar="FILE", help="script JSON to replay")
    parser.add_argument("--emit-spec", metavar="PATH", help="write the final spec JSON")
    parser.add_argument("--emit-view", metavar="PATH", help="write the final view JSON")
    parser.add_argument(
        "--emit-recs", metavar="PATH", help="write the final recommendation set JSON"
    )
    parser.add_argument(
        "--assert",
        dest="assert_file",
        metavar="PATH",
        help="compare final outputs against an expectations file",
    )
    parser.add_argument("--serve", action="store_true", help="run the HTTP service")
    parser.add_argument("--port", type=int, default=8878, help="serve port")
    parser.add_argument("--host", default="127.0.0.1", help="serve host")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.serve:
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    if not args.data or not args.script:
        print("replay mode needs --data and --script (or use --serve)", file=sys.stderr)
        return 2

    try:
        dataset = load_csv(args.data)
        script = load_script(args.script)
        outcome = run_script(script, dataset)
    except ScriptError as exc:
        where = f" (step {exc.step_index})" if exc.step_index is not None else ""
        print(f"error{where}: {exc.message}", file=sys.stderr)
        return 1
    except EngineError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 1

    if args.emit_spec:
        emit_json(outcome.spec, args.emit_spec)
    if args.emit_view:
        emit_json(outcome.view, args.emit_view)
    if args.emit_recs:
        emit_json(outcome.recommendations, args.emit_recs)

    if args.assert_file:
        try:
            expected = json.loads(Path(args.assert_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read assert file: {exc}", file=sys.stderr)
            return 1
        problems = assert_outputs(outcome, expected)
        if problems:
            for problem in problems:
                print(problem, file=sys.stderr)
            return 1

    print(f"ok: {outcome.steps_run} steps, revision {outcome.spec['revision']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

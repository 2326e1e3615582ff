"""Command-line interface.

Verbs: `sim run` (full simulation + report), `sim sweep` (weight sweep over
the grid oracle), `oracle` (exhaustive front CSV), `serve` (HTTP service).
Exit codes: 0 success, 2 validation failure, 1 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParetoPlaceError, ValidationError
from .harness import load_config, run_simulation, sweep_weights
from .pareto import brute_force_front
from .problem import default_problem


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paretoplace",
        description="Pareto-based placement of a floating 3D UI element",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("sim", help="simulation harness")
    sim_sub = sim.add_subparsers(dest="sim_command", required=True)

    run = sim_sub.add_parser("run", help="oracle + solver comparison run")
    run.add_argument("--config", help="JSON config path (defaults when omitted)")
    run.add_argument("--out", required=True, help="output directory")

    sweep = sim_sub.add_parser("sweep", help="weighted-sum sweep over the oracle")
    sweep.add_argument("--config", help="JSON config path")
    sweep.add_argument("--steps", type=int, required=True, help="number of weights >= 3")
    sweep.add_argument("--out", help="output JSON file (stdout when omitted)")

    oracle = sub.add_parser("oracle", help="exhaustive grid front as CSV")
    oracle.add_argument("--config", help="JSON config path")
    oracle.add_argument("--resolution", type=int, required=True, help="grid resolution >= 2")
    oracle.add_argument("--out", help="output CSV file (stdout when omitted)")

    serve = sub.add_parser("serve", help="preference-elicitation HTTP service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--data", required=True, help="session data directory")
    return parser


def _cmd_sim_run(args) -> int:
    config = load_config(args.config)
    report = run_simulation(config, args.out)
    print(f"oracle front: {report.oracle_front_size} members")
    print(f"nsga3 front:  {report.nsga3_front_size} members")
    print(f"igd (normalized): {report.igd:.6f}")
    print(f"collapse_check: {report.collapse_check}")
    print(f"report: {args.out}/report.json")
    return 0


def _cmd_sim_sweep(args) -> int:
    config = load_config(args.config)
    result = sweep_weights(config, args.steps)
    text = json.dumps(result.to_dict(), sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_oracle(args) -> int:
    config = load_config(args.config)
    front = brute_force_front(default_problem(config.pose), args.resolution)
    csv = front.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(args.data), host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sim" and args.sim_command == "run":
            return _cmd_sim_run(args)
        if args.command == "sim" and args.sim_command == "sweep":
            return _cmd_sim_sweep(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "serve":
            return _cmd_serve(args)
        parser.error("unknown command")
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParetoPlaceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

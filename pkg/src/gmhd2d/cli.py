"""Command-line entry point: ``gmhd2d {run,sweep,classify,verify,bounds-table}``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import replace

from .config import load_config
from .errors import GmhdError
from .regime import BOUNDS_COLUMNS, classify, region_boundary_table
from .runner import SUMMARY_COLUMNS, SweepSpec, run, sweep
from .verify import run_verification


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def cmd_run(args) -> int:
    config = load_config(args.config)
    if args.output_dir:
        config = replace(config, output_dir=args.output_dir)
    result = run(config, resume_from=args.resume)
    last = result.history[-1]
    print(
        json.dumps(
            {
                "final_time": result.state.time,
                "steps": result.steps,
                "energy": last.energy,
                "X": last.X,
                "Y": last.Y,
                "blowup": str(result.blowup),
                "regime": result.regime.as_dict(),
            }
        )
    )
    return 0


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    if args.output_dir:
        config = replace(config, output_dir=args.output_dir)
    spec = SweepSpec(args.alphas, args.betas, config, args.max_parallel or config.max_parallel)
    rows = sweep(spec)
    w = csv.writer(sys.stdout)
    w.writerow(SUMMARY_COLUMNS)
    for r in rows:
        w.writerow(r.as_row())
    return 0


def cmd_classify(args) -> int:
    print(json.dumps({"alpha": args.alpha, "beta": args.beta, **classify(args.alpha, args.beta).as_dict()}))
    return 0


def cmd_verify(args) -> int:
    results = run_verification(seed=args.seed, n=args.n)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_bounds_table(args) -> int:
    w = csv.writer(sys.stdout)
    w.writerow(BOUNDS_COLUMNS)
    for row in region_boundary_table(args.resolution):
        w.writerow([repr(v) for v in row])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gmhd2d", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="integrate one configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--output-dir")
    p.add_argument("--resume", metavar="CHECKPOINT")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run a grid of (alpha, beta) pairs")
    p.add_argument("--config", required=True)
    p.add_argument("--alphas", type=_floats, required=True)
    p.add_argument("--betas", type=_floats, required=True)
    p.add_argument("--max-parallel", type=int)
    p.add_argument("--output-dir")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("classify", help="regularity region of an (alpha, beta) pair")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the spectral and inequality self-checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=32)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds-table", help="lower bounds on beta over alpha in [0, 1/3] as CSV")
    p.add_argument("--resolution", type=int, required=True)
    p.set_defaults(func=cmd_bounds_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GmhdError, OSError) as exc:
        print(f"gmhd2d: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Sweep an (alpha, beta) grid and print the summary table next to the regime map.

    python scripts/regime_sweep.py configs/sweep_base.cfg \
        --alphas 0,0.2,0.4,0.6 --betas 0.8,1,1.2,1.4 --t-end 0.5

Without --t-end only the classifier is consulted (no time integration).
"""

import argparse
import csv
import sys
from dataclasses import replace

from gmhd2d.config import load_config
from gmhd2d.regime import classify
from gmhd2d.runner import SUMMARY_COLUMNS, SweepSpec, sweep


def _floats(text):
    return tuple(float(s) for s in text.split(","))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("config")
    ap.add_argument("--alphas", type=_floats, required=True)
    ap.add_argument("--betas", type=_floats, required=True)
    ap.add_argument("--t-end", type=float)
    ap.add_argument("--max-parallel", type=int, default=1)
    args = ap.parse_args()

    # regime map, beta rows from top to bottom
    width = max(len(s.value) for a in args.alphas for b in args.betas for s in [classify(a, b).source])
    print("beta \\ alpha " + " ".join(f"{a:>{width}g}" for a in args.alphas))
    for b in sorted(args.betas, reverse=True):
        print(f"{b:>12g} " + " ".join(f"{classify(a, b).source.value:>{width}}" for a in args.alphas))

    if args.t_end is None:
        return
    base = load_config(args.config)
    base = replace(base, policy=replace(base.policy, t_end=args.t_end))
    rows = sweep(SweepSpec(args.alphas, args.betas, base, args.max_parallel))
    print()
    w = csv.writer(sys.stdout)
    w.writerow(SUMMARY_COLUMNS)
    for r in rows:
        w.writerow(r.as_row())


if __name__ == "__main__":
    main()

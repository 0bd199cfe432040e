"""Run one configuration and report the a-priori quantities over time.

    python scripts/boundedness_probe.py configs/orszag_tang_probe.cfg [--t-end 1]

Prints the energy, X(t), Y(t) and ||Lambda^gamma b||^2 at every sample, then
a short verdict: blow-up trigger, energy monotonicity and the maxima.
"""

import argparse
from dataclasses import replace

import numpy as np

from gmhd2d.config import load_config
from gmhd2d.runner import run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("config")
    ap.add_argument("--t-end", type=float)
    ap.add_argument("--n", type=int)
    args = ap.parse_args()

    cfg = load_config(args.config)
    if args.t_end is not None:
        cfg = replace(cfg, policy=replace(cfg.policy, t_end=args.t_end))
    if args.n is not None:
        cfg = cfg.with_params(n=args.n)

    res = run(cfg)
    print(f"{'t':>8} {'energy':>14} {'X':>14} {'Y':>14} {'|L^g b|^2':>14}")
    for r in res.history:
        print(f"{r.time:8.4f} {r.energy:14.6e} {r.X:14.6e} {r.Y:14.6e} {r.hgamma_b:14.6e}")

    energy = np.array([r.energy for r in res.history])
    drift = float(np.max(np.diff(energy), initial=-np.inf)) / energy[0]
    print()
    print(f"regime        {res.regime.source.value} (margin {res.regime.margin:.4g})")
    print(f"blow-up       {res.blowup}")
    print(f"energy        largest relative increase between samples {drift:.3e}")
    print(f"max X, max Y  {max(r.X for r in res.history):.6e}, {max(r.Y for r in res.history):.6e}")
    print(f"steps         {res.steps} in {res.wall_seconds:.1f}s")


if __name__ == "__main__":
    main()

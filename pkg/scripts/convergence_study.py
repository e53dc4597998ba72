"""Two numerical studies behind the solver defaults.

1. Mesh refinement on [0, T0]: x(T0) for Example 4.1 as N doubles, with the
   observed order log2(|d_N| / |d_2N|).
2. Horizon: the extrapolated limit of each example as Tmax grows, showing
   how the gap to the predicted limit shrinks.
3. Geometric ratio: the same limit as the extension ratio shrinks, which
   separates discretization bias from extrapolation error.

    python3 scripts/convergence_study.py [--quick]
"""

from __future__ import annotations

import argparse
import math
from dataclasses import replace

from rlfde.asymptote import extrapolate_limit, tail_exponent
from rlfde.examples import EXAMPLES, load_example
from rlfde.solver import solve, solve_picard


def mesh_study(ns):
    spec = load_example("4.1")
    print(f"mesh refinement, example 4.1, T0 = {spec.solver.T0:g}, grading r = {spec.grading():g}")
    print(f"{'N':>6s} {'x(T0)':>20s} {'change':>10s} {'order':>6s}")
    prev = prev_d = None
    for n in ns:
        tr = solve_picard(spec, spec.mesh(N=n))
        x = tr.x[-1]
        d = None if prev is None else abs(x - prev)
        order = "" if (d is None or prev_d is None or d == 0) else f"{math.log2(prev_d / d):6.2f}"
        print(f"{n:6d} {x:20.15f} {'' if d is None else f'{d:10.2e}':>10s} {order:>6s}")
        prev, prev_d = x, d


def horizon_study(horizons):
    print("\nextrapolated limit against the solve horizon")
    print(f"{'ex':4s} {'Tmax':>8s} {'x(T)':>14s} {'limit':>14s} {'gap':>9s} {'uncert':>9s}")
    for ex, info in EXAMPLES.items():
        base = load_example(ex)
        p = tail_exponent(base)
        for T in horizons:
            spec = replace(base, solver=replace(base.solver, Tmax=T))
            tr = solve(spec)
            e = extrapolate_limit(tr, p)
            gap = abs(e.limit - info.exact) / max(1.0, abs(info.exact))
            print(f"{ex:4s} {T:8.0e} {tr.x[-1]:14.8f} {e.limit:14.8f} {gap:9.2e} {e.uncertainty:9.2e}")


def ratio_study(ratios, examples=("4.1", "4.5")):
    print("\nextrapolated limit against the geometric extension ratio (Tmax as shipped)")
    print(f"{'ex':4s} {'ratio':>6s} {'nodes':>6s} {'limit':>14s} {'gap':>9s}")
    for ex in examples:
        base = load_example(ex)
        p = tail_exponent(base)
        for q in ratios:
            tr = solve(replace(base, solver=replace(base.solver, ratio=q)))
            e = extrapolate_limit(tr, p)
            gap = abs(e.limit - EXAMPLES[ex].exact) / max(1.0, abs(EXAMPLES[ex].exact))
            print(f"{ex:4s} {q:6.3f} {tr.t.size:6d} {e.limit:14.8f} {gap:9.2e}")


def main(argv=None):
    ap = argparse.ArgumentParser(description="mesh and horizon convergence studies")
    ap.add_argument("--quick", action="store_true", help="smaller grids, for a smoke run")
    args = ap.parse_args(argv)
    mesh_study((32, 64, 128, 256) if args.quick else (32, 64, 128, 256, 512, 1024))
    horizon_study((1e4, 1e5) if args.quick else (1e4, 1e5, 1e6, 1e7))
    ratio_study((1.25, 1.1) if args.quick else (1.25, 1.1, 1.05))


if __name__ == "__main__":
    main()

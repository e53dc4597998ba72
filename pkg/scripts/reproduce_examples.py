"""Solve the six shipped examples, compare both tail extrapolations with the predicted limits.

    python3 scripts/reproduce_examples.py [--out-dir runs/] [--tmax 1e6]

With ``--out-dir`` each trajectory goes to ``ex4_k.csv`` and each report to
``ex4_k.json``.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import replace
from pathlib import Path

from rlfde.asymptote import extrapolate_limit, report_json, tail_exponent
from rlfde.examples import EXAMPLES, analyse, load_example
from rlfde.solver import write_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path)
    ap.add_argument("--tmax", type=float, default=None, help="override the solve horizon")
    args = ap.parse_args(argv)
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)

    print(f"{'ex':4s} {'thm':4s} {'predicted':>14s} {'x(T)':>14s} {'aitken':>14s} {'series':>14s} {'p':>6s} {'gap':>9s} {'sec':>5s}")
    for ex, info in EXAMPLES.items():
        spec = load_example(ex)
        if args.tmax:
            spec = replace(spec, solver=replace(spec.solver, Tmax=args.tmax))
        start = time.perf_counter()
        report, traj = analyse(spec)
        elapsed = time.perf_counter() - start
        plain = extrapolate_limit(traj)
        p = tail_exponent(spec)
        aitken = "refused" if plain.refused else f"{plain.limit:.8f}"
        print(
            f"{ex:4s} {report.governing_theorem:4s} {report.predicted_limit:14.8f} {traj.x[-1]:14.8f} "
            f"{aitken:>14s} {report.extrapolated_solver_limit:14.8f} {p:6.3f} {report.agreement:9.2e} {elapsed:5.2f}"
        )
        if abs(report.predicted_limit - info.exact) > 1e-10:
            print(f"     predicted limit differs from {info.symbolic} = {info.exact!r}")
        if args.out_dir:
            stem = "ex" + ex.replace(".", "_")
            write_csv(traj, args.out_dir / f"{stem}.csv")
            (args.out_dir / f"{stem}.json").write_text(report_json(report) + "\n")


if __name__ == "__main__":
    main()

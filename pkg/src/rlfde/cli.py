"""Command-line interface: ``rlfde {integrate,solve,asymptote,verify,reproduce}``."""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from enum import IntEnum

from .asymptote import LimitEquationError, TooShortError, report_json
from .expr import EvalError, ExprError
from .fracint import SingularFunction, frac_integral
from .quadrature import QuadratureWarning
from .solver import ConvergenceError, SolverEvalError, solve, verify_solution, write_csv
from .special import DomainError
from .specfile import EXAMPLE_IDS, SpecError, load_spec

__all__ = ["ExitStatus", "main", "build_parser"]


class ExitStatus(IntEnum):
    OK = 0
    VERDICT_FAILED = 1
    USAGE = 2
    NUMERICAL = 3


NUMERICAL_ERRORS = (ConvergenceError, SolverEvalError, EvalError, LimitEquationError, TooShortError, FloatingPointError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(ExitStatus.USAGE)


def _err(msg: str) -> None:
    print(f"rlfde: {msg}", file=sys.stderr)


def cmd_integrate(args) -> int:
    try:
        rho = SingularFunction.parse(args.rho, args.alpha, args.var)
    except (ExprError, DomainError) as exc:
        _err(str(exc))
        return ExitStatus.USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", QuadratureWarning)
            res = frac_integral(rho, args.beta, args.t, full_output=True)
    except DomainError as exc:
        _err(str(exc))
        return ExitStatus.USAGE
    except EvalError as exc:
        _err(f"evaluation failed: {exc}")
        return ExitStatus.NUMERICAL
    print(f"y = {res.value:.17g}")
    print(f"error_estimate = {res.error:.3g}")
    if not res.converged:
        _err(f"quadrature did not converge with {res.n} nodes per panel")
        return ExitStatus.NUMERICAL
    return ExitStatus.OK


def cmd_solve(args) -> int:
    spec = load_spec(args.spec)
    if args.max_iter is not None:
        from dataclasses import replace

        spec = replace(spec, solver=replace(spec.solver, max_iter=args.max_iter))
    traj = solve(spec)
    verdicts = verify_solution(spec, traj)
    if args.out:
        write_csv(traj, args.out)
    by_name = {v.name: v for v in verdicts}
    conc = by_name["conclusion: positive nonincreasing"]
    res = by_name["Volterra residual"]
    print(f"residual = {traj.residual:.3e}  (limit {res.tolerance:.1e}: {res.status})")
    print(f"monotone = {conc.status}" + (f"  ({conc.note})" if conc.note else ""))
    print(f"x(T) = {traj.x[-1]:.17g} at T = {traj.T:.17g}")
    print(f"nodes = {traj.t.size}, picard sweeps = {traj.iterations}" + (", damped" if traj.damped else ""))
    for v in verdicts:
        if v.name.startswith("hypothesis"):
            print(f"{v.name}: {v.status}")
    failed = (not res.passed) or (not conc.skipped and not conc.passed)
    return ExitStatus.VERDICT_FAILED if failed else ExitStatus.OK


def cmd_asymptote(args) -> int:
    from .examples import AGREEMENT_TOL, analyse

    spec = load_spec(args.spec)
    report, _ = analyse(spec, run_solver=args.solve)
    text = report_json(report)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.solve and (report.agreement is None or report.agreement > AGREEMENT_TOL):
        return ExitStatus.VERDICT_FAILED
    return ExitStatus.OK


def cmd_verify(args) -> int:
    from .suites import SUITES

    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        for check in SUITES[name]():
            start = time.perf_counter()
            try:
                row = check()
            except Exception as exc:  # a crashing check is reported as a failed row
                from .suites import CheckRow

                row = CheckRow(check.__name__.lstrip("_"), False, f"{type(exc).__name__}: {exc}")
            elapsed = time.perf_counter() - start
            failed += not row.passed
            print(f"[{'pass' if row.passed else 'FAIL'}] {name:7s} {row.name}  ({row.detail}; {elapsed:.2f} s)")
    print(f"{failed} failed" if failed else "all checks passed")
    return ExitStatus.VERDICT_FAILED if failed else ExitStatus.OK


def cmd_reproduce(args) -> int:
    from .examples import AGREEMENT_TOL, reproduce

    ids = EXAMPLE_IDS if args.example == "all" else (args.example,)
    header = f"{'example':8s} {'theorem':8s} {'limit':28s} {'value':>20s} {'solver':>20s} {'gap':>10s}"
    print(header)
    print("-" * len(header))
    failed = 0
    for ex in ids:
        r = reproduce(ex)
        failed += not r.passed
        pred = "nan" if r.predicted is None else f"{r.predicted:.12g}"
        print(f"{ex:8s} {r.theorem:8s} {r.symbolic:28s} {pred:>20s} {r.solver_limit:20.12g} {r.gap:10.2e}" + ("" if r.passed else "  FAIL"))
    print(f"tolerance: relative gap <= {AGREEMENT_TOL} (absolute for a zero limit)")
    return ExitStatus.VERDICT_FAILED if failed else ExitStatus.OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rlfde", description="Weighted Riemann-Liouville fractional differential equations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("integrate", help="evaluate int_0^t (t-s)^(beta-1) rho(s) ds")
    q.add_argument("--beta", type=float, required=True)
    q.add_argument("--rho", required=True, help="expression in s")
    q.add_argument("--alpha", type=float, default=0.0, help="declared exponent: s^alpha rho(s) is continuous at 0")
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--var", default="s", help=argparse.SUPPRESS)
    q.set_defaults(func=cmd_integrate)

    q = sub.add_parser("solve", help="solve a spec file and write the trajectory")
    q.add_argument("spec")
    q.add_argument("--out", help="CSV output path (columns t,w,x)")
    q.add_argument("--max-iter", type=int, dest="max_iter")
    q.set_defaults(func=cmd_solve)

    q = sub.add_parser("asymptote", help="predict the long-time limit of a spec")
    q.add_argument("spec")
    q.add_argument("--solve", action="store_true", help="also solve and compare against the prediction")
    q.add_argument("--out", help="write the JSON report here as well")
    q.set_defaults(func=cmd_asymptote)

    q = sub.add_parser("verify", help="run the property suites")
    q.add_argument("--suite", choices=("lemmas", "solver", "all"), default="all")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("reproduce", help="solve the shipped examples and compare limits")
    q.add_argument("example", choices=EXAMPLE_IDS + ("all",))
    q.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else ExitStatus.OK
    try:
        return int(args.func(args))
    except SpecError as exc:
        _err(f"invalid spec: {exc}")
        return ExitStatus.USAGE
    except NUMERICAL_ERRORS as exc:
        _err(f"numerical failure: {exc}")
        return ExitStatus.NUMERICAL
    except OSError as exc:
        _err(str(exc))
        return ExitStatus.USAGE


if __name__ == "__main__":
    sys.exit(main())

"""End-to-end runs: classify, solve, extrapolate, compare; and the six shipped example problems."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .asymptote import AsymptoteReport, classify, extrapolate_limit, tail_exponent
from .solver import ProblemSpec, WeightedTrajectory, solve
from .specfile import EXAMPLE_IDS, example_path, load_spec

__all__ = ["ExampleInfo", "EXAMPLES", "AGREEMENT_TOL", "analyse", "Reproduction", "reproduce", "load_example"]

AGREEMENT_TOL = 0.02

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class ExampleInfo:
    symbolic: str
    exact: float
    theorem: str


EXAMPLES = {
    "4.1": ExampleInfo("(sqrt(pi)+sqrt(4+pi)-2)/2", (_SQRT_PI + math.sqrt(4 + math.pi) - 2) / 2, "3.2"),
    "4.2": ExampleInfo("0", 0.0, "3.4"),
    "4.3": ExampleInfo("pi^(3/4)", math.pi**0.75, "3.5"),
    "4.4": ExampleInfo("sqrt(pi)", _SQRT_PI, "3.6"),
    "4.5": ExampleInfo("sqrt(pi)", _SQRT_PI, "3.7"),
    "4.6": ExampleInfo("-sqrt(pi)", -_SQRT_PI, "3.7"),
}
assert tuple(EXAMPLES) == EXAMPLE_IDS


def load_example(example_id: str) -> ProblemSpec:
    return load_spec(example_path(example_id))


def analyse(spec: ProblemSpec, *, run_solver: bool = True) -> tuple[AsymptoteReport, WeightedTrajectory | None]:
    """Classification, plus (optionally) a solve to ``Tmax`` and its extrapolated limit."""
    report = classify(spec)
    if not run_solver:
        return report, None
    traj = solve(spec)
    p = tail_exponent(spec)
    ext = extrapolate_limit(traj, p)
    report.tail_exponent = p
    report.extrapolated_solver_limit = ext.limit
    report.uncertainty = ext.uncertainty
    if ext.note:
        report.notes.append(ext.note)
    report.notes.append(f"solver residual {traj.residual:.3g} on {traj.t.size} nodes up to t = {traj.T:g}")
    if report.predicted_limit is not None and math.isfinite(ext.limit):
        report.agreement = abs(ext.limit - report.predicted_limit) / max(1.0, abs(report.predicted_limit))
    return report, traj


@dataclass
class Reproduction:
    example: str
    symbolic: str
    exact: float
    predicted: float | None
    theorem: str
    solver_limit: float
    uncertainty: float
    gap: float
    residual: float
    report: AsymptoteReport
    trajectory: WeightedTrajectory

    @property
    def prediction_error(self) -> float:
        if self.predicted is None:
            return math.inf
        return abs(self.predicted - self.exact)

    @property
    def passed(self) -> bool:
        return (
            self.prediction_error <= 1e-10
            and self.theorem == EXAMPLES[self.example].theorem
            and self.gap <= AGREEMENT_TOL
        )

    def monotone_positive(self, slack: float = 1e-8) -> bool:
        x = self.trajectory.x[1:]
        rise = x[1:] - x[:-1]
        return bool((x > 0).all() and (rise <= slack * abs(x[:-1]).clip(min=1.0)).all())


def reproduce(example_id: str) -> Reproduction:
    info = EXAMPLES[example_id]
    spec = load_example(example_id)
    report, traj = analyse(spec)
    gap = report.agreement if report.agreement is not None else math.inf
    return Reproduction(
        example_id,
        info.symbolic,
        info.exact,
        report.predicted_limit,
        report.governing_theorem,
        report.extrapolated_solver_limit,
        report.uncertainty,
        gap,
        traj.residual,
        report,
        traj,
    )

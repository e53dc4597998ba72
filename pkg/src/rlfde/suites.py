"""Named check suites run by ``rlfde verify``.

Each check returns a :class:`CheckRow`; a suite is a list of zero-argument
callables so the CLI can time and report them one by one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expr import Expression
from .fracint import (
    SingularFunction,
    check_monotone,
    check_weak_singular_bound,
    check_weighted_continuity,
    find_turning_point,
    frac_integral,
    tail_limit,
    turning_point_g,
)
from .solver import ProblemSpec, SolverConfig, Structured, solve, verify_solution
from .special import beta_fn, gamma, resolvent_constant

__all__ = ["CheckRow", "lemma_suite", "solver_suite", "SUITES", "random_monotone_family", "random_bound_draw", "power_forcing_spec"]


@dataclass(frozen=True)
class CheckRow:
    name: str
    passed: bool
    detail: str = ""


def _rel(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)) / np.maximum(np.abs(np.asarray(b)), 1e-300)))


def random_monotone_family(rng: np.random.Generator, beta: float, direction: str) -> SingularFunction:
    """``s^-alpha (c1 + c2 e^-s)`` (nonincreasing case) or ``s^-alpha (c1 + c2 (1 - e^-s))``.

    ``alpha`` is drawn from ``[beta, 0.95]`` or ``[0, beta]`` so that
    ``t^beta rho`` is monotone in the requested direction.
    """
    c1, c2 = (float(c) for c in rng.uniform(0.1, 2.0, size=2))
    if direction == "nonincreasing":
        alpha = float(rng.uniform(beta, 0.95))
        src = f"s^(-{alpha!r})*({c1!r}+{c2!r}*exp(-s))"
    else:
        alpha = float(rng.uniform(0.0, beta))
        src = f"s^(-{alpha!r})*({c1!r}+{c2!r}*(1-exp(-s)))"
    return SingularFunction.parse(src, alpha)


def random_bound_draw(rng: np.random.Generator):
    """``(rho, beta, p, t)`` with ``rho = c s^-alpha (1 + d s)`` and ``s^(1-beta) rho`` in L^p."""
    beta = float(rng.uniform(0.3, 0.9))
    p = float(rng.uniform(1.0 / beta + 0.1, 1.0 / beta + 4.0))
    # p (1 - beta - alpha) > -1  <=>  alpha < 1 - beta + 1/p
    alpha_max = min(0.95, 1.0 - beta + 1.0 / p - 0.02)
    alpha = float(rng.uniform(0.0, alpha_max))
    c, d = float(rng.uniform(0.2, 3.0)), float(rng.uniform(0.0, 2.0))
    t = float(rng.uniform(0.05, 1.0))
    rho = SingularFunction.parse(f"{c!r}*s^(-{alpha!r})*(1+{d!r}*s)", alpha)
    return rho, beta, p, t


def _closed_forms():
    rho = SingularFunction.parse("s^(-1/3)", 1.0 / 3.0)
    exact = gamma(0.5) * gamma(2.0 / 3.0) / gamma(7.0 / 6.0)
    e1 = _rel(frac_integral(rho, 0.5, 1.0), exact)
    rho = SingularFunction.parse("1/(1+s)")
    t = np.array([0.1, 1.0, 10.0, 100.0])
    e2 = _rel(frac_integral(rho, 0.5, t), 2.0 / np.sqrt(1 + t) * np.log(np.sqrt(1 + t) + np.sqrt(t)))
    err = max(e1, e2)
    return CheckRow("closed forms s^(-1/3) and 1/(1+s)", err <= 1e-9, f"max rel err {err:.2e}")


def _resolvent():
    err = 0.0
    for b in (0.2, 0.5, 0.8):
        rho = SingularFunction.parse(f"s^(-{b!r})", b)
        err = max(err, _rel(frac_integral(rho, b, np.array([0.5, 5.0, 500.0])), resolvent_constant(b)))
    return CheckRow("resolvent identity pi/sin(beta pi)", err <= 1e-10, f"max rel err {err:.2e}")


def _power_law():
    err = 0.0
    for b in (0.3, 0.5, 0.7):
        for a in (0.0, 0.2, 0.6):
            rho = SingularFunction.parse(f"s^(-{a!r})", a)
            t = np.array([0.01, 1.0, 100.0])
            err = max(err, _rel(frac_integral(rho, b, t), beta_fn(b, 1 - a) * t ** (b - a)))
    return CheckRow("power-law homogeneity", err <= 1e-9, f"max rel err {err:.2e}")


def _monotone_families(seed: int = 20240611, draws: int = 10):
    rng = np.random.default_rng(seed)
    fails = []
    for direction in ("nonincreasing", "nondecreasing"):
        for _ in range(draws):
            beta = float(rng.uniform(0.2, 0.8))
            rho = random_monotone_family(rng, beta, direction)
            v = check_monotone(rho, beta, direction=direction)
            if not v.passed or v.note:
                fails.append(rho.source)
    return CheckRow("monotone fractional integrals (random families)", not fails, f"{2 * draws} draws, {len(fails)} failures")


def _tail_pi():
    rho = SingularFunction.parse("1/(1+sqrt(s))")
    est, v = tail_limit(rho, 0.5)
    t = np.array([1.0, 10.0, 1000.0])
    y = frac_integral(rho, 0.5, t)
    lower = math.pi - beta_fn(0.5, 1.0 / 3.0) * t ** (-1.0 / 6.0)
    sandwich = bool(np.all(y <= math.pi) and np.all(y >= lower))
    return CheckRow("tail limit pi and its sandwich", v.passed and sandwich, f"estimate {est:.10f}")


def _tail_zero():
    est, v = tail_limit(SingularFunction.parse("1/(1+s)"), 0.5)
    return CheckRow("tail limit 0 for 1/(1+s)", v.passed, f"estimate {est:.3e}")


def _turning_point():
    T0 = find_turning_point()
    ok = 2.0 < T0 < 3.0 and abs(turning_point_g(T0) - 1.0) <= 1e-10
    t = np.linspace(0.05, 20.0, 200)
    y = frac_integral(SingularFunction.parse("1/(1+s)"), 0.5, t)
    d = np.diff(y)
    before, after = t[1:] < T0, t[:-1] > T0
    shape = bool(np.all(d[before] > 0) and np.all(d[after] < 0))
    return CheckRow("turning point of 2 ln(sqrt(1+t)+sqrt(t))/sqrt(1+t)", ok and shape, f"T0 = {T0:.12f}")


def _weak_bound(seed: int = 7, draws: int = 20):
    rng = np.random.default_rng(seed)
    fails = 0
    for _ in range(draws):
        rho, beta, p, t = random_bound_draw(rng)
        fails += not check_weak_singular_bound(rho, beta, p, t).passed
    return CheckRow("weakly singular L^p bound (random draws)", fails == 0, f"{draws} draws, {fails} failures")


def _continuity():
    fails = [
        src
        for src, alpha, beta in (("s^(-1/3)", 1 / 3, 0.5), ("1", 0.0, 0.5), ("s^(-0.7)", 0.7, 0.7), ("1/(1+s)", 0.0, 0.3))
        if not check_weighted_continuity(SingularFunction.parse(src, alpha), beta).passed
    ]
    return CheckRow("weighted fractional integral continuous at 0", not fails, ", ".join(fails))


def lemma_suite():
    return [_closed_forms, _resolvent, _power_law, _monotone_families, _tail_pi, _tail_zero, _turning_point, _weak_bound, _continuity]


def power_forcing_spec(beta: float, gam: float, T: float = 100.0) -> ProblemSpec:
    """``f(t, x) = t^(gam-1)`` with ``x0 = 1`` on ``[0, T]``; the solution is known in closed form."""
    return ProblemSpec(
        beta,
        1.0,
        Structured(
            SingularFunction.parse("0", 0.0, "t"),
            Expression.parse("x", ["x"]),
            SingularFunction.parse(f"t^({gam!r}-1)", 1.0 - gam, "t"),
            0.0,
        ),
        SolverConfig(T0=T, Tmax=T),
    )


def _exactness():
    err = 0.0
    for beta in (0.3, 0.5, 0.7):
        for gam in (0.5, 1.0):
            tr = solve(power_forcing_spec(beta, gam))
            t = tr.t[1:]
            exact = t ** (beta - 1) + beta_fn(beta, gam) / gamma(beta) * t ** (beta + gam - 1)
            err = max(err, _rel(tr.x[1:], exact))
    return CheckRow("solver exact on f = t^(gamma-1)", err <= 1e-8, f"max rel err {err:.2e}")


def _zero_rhs():
    spec = power_forcing_spec(0.5, 1.0)
    spec = ProblemSpec(0.5, 2.0, Structured(spec.rhs.l, spec.rhs.phi, SingularFunction.parse("0", 0.0, "t"), 0.0), SolverConfig(T0=10, Tmax=1e4))
    tr = solve(spec)
    ok = bool(np.all(tr.w == 2.0)) and tr.iterations == 1
    return CheckRow("zero right-hand side keeps w = x0", ok, f"iterations {tr.iterations}")


def _examples_residual():
    from .examples import load_example

    rows = []
    for ex in ("4.1", "4.3", "4.6"):
        spec = load_example(ex)
        tr = solve(spec)
        verdicts = {v.name: v for v in verify_solution(spec, tr)}
        res_ok = verdicts["Volterra residual"].passed and tr.residual <= 1e-8
        conc = verdicts["conclusion: positive nonincreasing"]
        conc_ok = conc.skipped if ex == "4.6" else conc.passed
        rows.append((ex, res_ok and conc_ok, tr.residual))
    ok = all(r[1] for r in rows)
    return CheckRow("examples 4.1/4.3/4.6: residual and monotone audit", ok, ", ".join(f"{e}: {r:.1e}" for e, _, r in rows))


def solver_suite():
    return [_exactness, _zero_rhs, _examples_residual]


SUITES = {"lemmas": lemma_suite, "solver": solver_suite}

"""Weighted Cauchy problems ``D^beta x = f(t, x)``, ``t^(1-beta) x(t) -> x0``, solved in Volterra form.

The unknown is the weighted state ``w(t) = t^(1-beta) x(t)``, which is
continuous at 0 with ``w(0) = x0``. A fixed point of

    (F w)(t) = x0 + t^(1-beta) / Gamma(beta) int_0^t (t-s)^(beta-1) f(s, s^(beta-1) w(s)) ds

is computed by Picard iteration on a graded mesh, then continued node by
node over a geometric mesh. The history integral uses product integration:
``f(s, x(s)) = s^-delta g(s)`` with ``g`` piecewise linear, ``delta`` the
declared singularity exponent of ``f`` along the solution at 0.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np

from .expr import EvalError, Expression
from .fracint import MONOTONE_TOL, PropertyVerdict, SingularFunction
from .quadrature import GradedMesh, geometric_nodes, history_row, history_weights
from .special import DomainError, gamma

__all__ = [
    "Envelopes",
    "Structured",
    "General",
    "SolverConfig",
    "ProblemSpec",
    "WeightedTrajectory",
    "ConvergenceError",
    "SolverEvalError",
    "apply_operator_F",
    "solve_picard",
    "march_extend",
    "solve",
    "residual",
    "verify_solution",
    "audit_phi",
    "audit_weighted",
    "hypothesis_audit",
    "write_csv",
    "AUDIT_GRID",
]

AUDIT_GRID = np.logspace(-6, 6, 241)


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, history=None):
        super().__init__(message)
        self.history = list(history or [])


class SolverEvalError(RuntimeError):
    """Right-hand side could not be evaluated at some mesh node."""

    def __init__(self, message: str, node: float | None = None):
        super().__init__(message)
        self.node = node


@dataclass(frozen=True)
class Envelopes:
    """Bounds ``l1 x^mu + k1 <= f <= l x^mu + k`` and an optional decay exponent ``gamma``."""

    l: Expression
    k: Expression
    l1: Expression
    k1: Expression
    gamma: float | None = None


@dataclass(frozen=True)
class Structured:
    """``f(t, x) = l(t) phi(x) + k(t)`` with ``|phi(x)| <= M x^mu``."""

    l: SingularFunction
    phi: Expression
    k: SingularFunction
    mu: float
    envelopes: Envelopes | None = None

    kind = "structured"

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise DomainError(f"mu must lie in [0, 1], got {self.mu}")

    @property
    def alpha_l(self) -> float:
        return self.l.alpha

    @property
    def alpha_k(self) -> float:
        return self.k.alpha

    def __call__(self, t, x):
        lv = self.l.rho(t)
        kv = self.k.rho(t)
        if self.l.is_zero():
            return kv + 0.0 * np.asarray(x, dtype=float)
        return lv * self.phi(x=x) + kv


@dataclass(frozen=True)
class General:
    f: Expression
    mu: float = 0.0
    alpha_l: float = 0.0
    alpha_k: float = 0.0
    envelopes: Envelopes | None = None

    kind = "general"

    def __call__(self, t, x):
        out = self.f(t=t, x=x)
        return np.broadcast_to(np.asarray(out, dtype=float), np.broadcast(np.asarray(t), np.asarray(x)).shape)


Rhs = Union[Structured, General]


@dataclass(frozen=True)
class SolverConfig:
    T0: float = 10.0
    Tmax: float = 1e6
    N: int = 256
    grading: float | None = None
    ratio: float = 1.25
    tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if not (self.T0 > 0 and self.Tmax >= self.T0):
            raise ValueError(f"need 0 < T0 <= Tmax, got T0={self.T0}, Tmax={self.Tmax}")
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.grading is not None and self.grading < 1:
            raise ValueError("grading exponent must be >= 1")
        if not self.ratio > 1:
            raise ValueError("geometric ratio must exceed 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class ProblemSpec:
    beta: float
    x0: float
    rhs: Rhs
    solver: SolverConfig = field(default_factory=SolverConfig)
    name: str = ""

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise DomainError(f"beta must lie in (0, 1), got {self.beta}")
        if not math.isfinite(self.x0):
            raise DomainError("x0 must be finite")
        if not self.delta < 1.0:
            raise DomainError(f"singularity exponent {self.delta} of f along the solution is not integrable")

    @property
    def delta(self) -> float:
        """Exponent with ``s^delta f(s, x(s))`` bounded near 0."""
        r = self.rhs
        return max(r.alpha_l + r.mu * (1.0 - self.beta), r.alpha_k, 0.0)

    def grading(self) -> float:
        g = self.solver.grading
        return max(2.0, 2.0 / self.beta) if g is None else g

    def mesh(self, T: float | None = None, N: int | None = None) -> GradedMesh:
        return GradedMesh(self.solver.T0 if T is None else T, self.solver.N if N is None else N, self.grading())

    def f(self, t, x):
        return self.rhs(t, x)


@dataclass(frozen=True)
class WeightedTrajectory:
    beta: float
    t: np.ndarray
    w: np.ndarray
    residual: float = float("nan")
    iterations: int = 0
    damped: bool = False
    history: tuple = ()

    def __post_init__(self):
        if self.t.shape != self.w.shape or self.t.ndim != 1:
            raise ValueError("nodes and values must be 1-D arrays of equal length")

    @property
    def x(self) -> np.ndarray:
        """``x_j = t_j^(beta-1) w_j``; entry 0 is ``inf`` times the sign of ``x0`` (or 0)."""
        out = np.empty_like(self.w)
        out[1:] = self.t[1:] ** (self.beta - 1.0) * self.w[1:]
        out[0] = math.copysign(math.inf, self.w[0]) if self.w[0] != 0 else 0.0
        return out

    @property
    def T(self) -> float:
        return float(self.t[-1])


# ---------------------------------------------------------------------------
# operator


def _g_values(spec: ProblemSpec, t: np.ndarray, w: np.ndarray) -> np.ndarray:
    """``t_j^delta f(t_j, x_j)`` for ``j >= 1`` (entry 0 unused, set to 0)."""
    g = np.zeros_like(w)
    if t.size < 2:
        return g
    tt, ww = t[1:], w[1:]
    x = tt ** (spec.beta - 1.0) * ww
    try:
        fv = np.asarray(spec.f(tt, x), dtype=float)
    except EvalError as exc:
        node = float(tt[exc.index]) if exc.index is not None else None
        raise SolverEvalError(f"right-hand side failed at t={node}: {exc}", node) from exc
    with np.errstate(over="ignore", invalid="ignore"):
        g[1:] = tt**spec.delta * fv
    bad = np.nonzero(~np.isfinite(g[1:]))[0]
    if bad.size:
        node = float(tt[bad[0]])
        raise SolverEvalError(f"right-hand side is not finite at t={node}", node)
    return g


def _operator(spec: ProblemSpec, t: np.ndarray, w: np.ndarray, W: np.ndarray) -> np.ndarray:
    g = _g_values(spec, t, w)
    out = np.empty_like(w)
    out[0] = spec.x0
    out[1:] = spec.x0 + t[1:] ** (1.0 - spec.beta) / gamma(spec.beta) * (W @ g)[1:]
    return out


def _weights(spec: ProblemSpec, t: np.ndarray) -> np.ndarray:
    return history_weights(t, spec.beta, spec.delta)


def apply_operator_F(spec: ProblemSpec, traj: WeightedTrajectory) -> WeightedTrajectory:
    """One application of ``F`` on the trajectory's nodes."""
    new_w = _operator(spec, traj.t, traj.w, _weights(spec, traj.t))
    return replace(traj, w=new_w, residual=float("nan"), iterations=0, history=())


def residual(spec: ProblemSpec, traj: WeightedTrajectory) -> float:
    """``max_j |F(w)_j - w_j|`` on the nodes."""
    Fw = _operator(spec, traj.t, traj.w, _weights(spec, traj.t))
    return float(np.max(np.abs(Fw - traj.w)))


def _stalled(history: list[float]) -> bool:
    # no net progress over the last five sweeps, or two consecutive increases
    if len(history) >= 3 and history[-1] > history[-2] > history[-3]:
        return True
    return len(history) >= 6 and history[-1] > 0.9 * history[-6]


def solve_picard(
    spec: ProblemSpec,
    mesh: GradedMesh | None = None,
    tol: float | None = None,
    max_iter: int | None = None,
) -> WeightedTrajectory:
    """Fixed point of ``F`` on ``mesh`` starting from ``w = x0``.

    Plain iteration until the sup-norm change is at most ``tol``; once the
    changes stop shrinking it switches to ``w <- (F w + w) / 2``.
    """
    mesh = spec.mesh() if mesh is None else mesh
    tol = spec.solver.tol if tol is None else tol
    max_iter = spec.solver.max_iter if max_iter is None else max_iter
    t = mesh.nodes()
    W = _weights(spec, t)
    w = np.full_like(t, float(spec.x0))
    theta = 1.0
    history: list[float] = []
    for it in range(1, max_iter + 1):
        Fw = _operator(spec, t, w, W)
        change = float(np.max(np.abs(Fw - w)))
        history.append(change)
        if not math.isfinite(change):
            raise ConvergenceError(f"Picard iteration produced non-finite values at sweep {it}", history)
        if change <= tol:
            w = Fw if theta == 1.0 else w + theta * (Fw - w)
            res = float(np.max(np.abs(_operator(spec, t, w, W) - w)))
            return WeightedTrajectory(spec.beta, t, w, res, it, theta < 1.0, tuple(history))
        if theta == 1.0 and _stalled(history):
            theta = 0.5
        w = w + theta * (Fw - w)
    raise ConvergenceError(
        f"Picard iteration did not reach tol={tol:g} in {max_iter} sweeps (last change {history[-1]:.3g})",
        history,
    )


def _bracket_root(h, w0: float, tol: float, grow: int = 60, iters: int = 200):
    """Root of the scalar ``h`` near ``w0``: widen a symmetric bracket, then bisect."""
    d = 1e-6 * max(1.0, abs(w0))
    for _ in range(grow):
        lo, hi = w0 - d, w0 + d
        hlo, hhi = h(lo), h(hi)
        if hlo == 0.0:
            return lo
        if hhi == 0.0:
            return hi
        if (hlo < 0) != (hhi < 0):
            break
        d *= 2.0
    else:
        return None
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        hm = h(mid)
        if hm == 0.0 or hi - lo <= tol * max(1.0, abs(mid)):
            return mid
        if (hm < 0) == (hlo < 0):
            lo, hlo = mid, hm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def march_extend(
    spec: ProblemSpec,
    traj: WeightedTrajectory,
    new_T: float,
    ratio: float | None = None,
    tol: float = 1e-14,
    max_iter: int = 500,
) -> WeightedTrajectory:
    """Continue ``traj`` to ``new_T`` over geometric nodes, one scalar fixed point per node."""
    if not new_T > traj.T:
        raise ValueError(f"new_T={new_T} must exceed the current endpoint {traj.T}")
    ratio = spec.solver.ratio if ratio is None else ratio
    new_nodes = geometric_nodes(traj.T, new_T, ratio)
    t = np.concatenate([traj.t, new_nodes])
    w = np.concatenate([traj.w, np.zeros_like(new_nodes)])
    g = _g_values(spec, traj.t, traj.w)
    g = np.concatenate([g, np.zeros_like(new_nodes)])
    beta, delta = spec.beta, spec.delta
    inv_gamma = 1.0 / gamma(beta)
    for j in range(traj.t.size, t.size):
        tj = t[j]
        row = history_row(t[: j + 1], j, beta, delta, 16)
        frozen = float(np.dot(row[:j], g[:j]))
        self_w = row[j]
        c = tj ** (1.0 - beta) * inv_gamma
        scale_x = tj ** (beta - 1.0)

        def G(wj):
            try:
                fv = float(spec.f(tj, scale_x * wj))
            except EvalError as exc:
                raise SolverEvalError(f"right-hand side failed at t={tj}: {exc}", float(tj)) from exc
            return spec.x0 + c * (frozen + self_w * tj**delta * fv)

        wj = w[j - 1]
        theta = 1.0
        prev_change = math.inf
        for it in range(max_iter):
            new = G(wj)
            change = abs(new - wj)
            if not math.isfinite(new):
                raise ConvergenceError(f"scalar iteration diverged at node t={tj}", [change])
            wj = wj + theta * (new - wj)
            if change <= tol * max(1.0, abs(wj)):
                break
            if change > prev_change and theta > 0.1:
                theta *= 0.5
            prev_change = change
        else:
            # fixed-point iteration stalls where phi has an infinite slope (cbrt near 0); bracket and bisect
            wj = _bracket_root(lambda v: G(v) - v, w[j - 1], tol)
            if wj is None:
                raise ConvergenceError(f"scalar iteration did not converge at node t={tj}", [change])
        w[j] = wj
        g[j] = tj**delta * float(spec.f(tj, scale_x * wj))
    out = WeightedTrajectory(beta, t, w, float("nan"), traj.iterations, traj.damped, traj.history)
    return replace(out, residual=residual(spec, out))


def solve(spec: ProblemSpec, T: float | None = None) -> WeightedTrajectory:
    """Picard on the graded mesh over ``[0, T0]``, then marching to ``T`` (default ``Tmax``)."""
    cfg = spec.solver
    T = cfg.Tmax if T is None else T
    if T <= cfg.T0:
        return solve_picard(spec, spec.mesh(T=T))
    traj = solve_picard(spec, spec.mesh())
    return march_extend(spec, traj, T)


# ---------------------------------------------------------------------------
# audits


def audit_phi(phi: Expression, mu: float, grid=None, require_monotone: bool = True) -> PropertyVerdict:
    """``phi`` nonnegative, nondecreasing (unless ``require_monotone`` is off) and ``phi(x) <= M x^mu`` on ``[0, 1e6]``.

    ``M`` is fitted on a log grid, then checked with a one-percent margin on
    an interleaved grid.
    """
    x = np.concatenate([[0.0], np.logspace(-6, 6, 241)]) if grid is None else np.asarray(grid, dtype=float)
    name = "hypothesis (1): phi"
    try:
        v = np.broadcast_to(np.asarray(phi(x=x), dtype=float), x.shape)
    except EvalError as exc:
        return PropertyVerdict(name, False, {"error": str(exc)})
    neg = np.nonzero(v < -MONOTONE_TOL)[0]
    if neg.size:
        j = int(neg[0])
        return PropertyVerdict(name, False, {"x": float(x[j]), "phi": float(v[j]), "violated": "nonnegative"}, MONOTONE_TOL)
    d = np.diff(v)
    dec = np.nonzero(d < -MONOTONE_TOL * np.maximum(1.0, np.abs(v[1:])))[0]
    if dec.size and require_monotone:
        j = int(dec[0])
        return PropertyVerdict(
            name, False, {"x": [float(x[j]), float(x[j + 1])], "phi": [float(v[j]), float(v[j + 1])], "violated": "nondecreasing"}, MONOTONE_TOL
        )
    pos = x > 0
    # a fitted M always exists on a bounded grid, so also compare the growth rate over the last decade with mu
    top = x >= x[-1] / 10.0
    if mu < 1.0 and np.count_nonzero(top) >= 2 and v[top][0] > 0 and v[-1] > 0:
        rate = math.log(v[-1] / v[top][0]) / math.log(x[-1] / x[top][0])
        if rate > mu + 0.01:
            return PropertyVerdict(name, False, {"growth_rate": rate, "mu": mu, "violated": "growth bound"}, 0.01)
    M = float(np.max(v[pos] / x[pos] ** mu))
    if mu > 0 and v[~pos].size and v[~pos][0] > MONOTONE_TOL:
        return PropertyVerdict(name, False, {"x": 0.0, "phi": float(v[~pos][0]), "violated": "growth bound at 0"})
    xc = np.sqrt(x[pos][1:] * x[pos][:-1])
    vc = np.broadcast_to(np.asarray(phi(x=xc), dtype=float), xc.shape)
    over = np.nonzero(vc > 1.01 * M * xc**mu + MONOTONE_TOL)[0]
    witness = {"M": M}
    if over.size:
        j = int(over[0])
        witness.update({"x": float(xc[j]), "phi": float(vc[j]), "violated": "growth bound"})
        return PropertyVerdict(name, False, witness, 0.01)
    return PropertyVerdict(name, True, witness, 0.01)


def audit_weighted(g: SingularFunction, beta: float, name: str, alpha_limit: float, grid=AUDIT_GRID) -> PropertyVerdict:
    """``t^beta g(t)`` nonnegative and nonincreasing on a log grid, and ``alpha < alpha_limit``.

    The exponent condition is what makes the weighted function p-integrable
    on [0, 1] for some ``p > 1/beta``.
    """
    if g.alpha >= alpha_limit:
        return PropertyVerdict(name, False, {"alpha": g.alpha, "limit": alpha_limit, "violated": "integrability"})
    t = np.asarray(grid, dtype=float)
    try:
        v = g.weighted(t, beta)
    except EvalError as exc:
        return PropertyVerdict(name, False, {"error": str(exc)})
    neg = np.nonzero(v < -MONOTONE_TOL)[0]
    if neg.size:
        j = int(neg[0])
        return PropertyVerdict(name, False, {"t": float(t[j]), "value": float(v[j]), "violated": "nonnegative"}, MONOTONE_TOL)
    inc = np.nonzero(np.diff(v) > MONOTONE_TOL * np.maximum(1.0, np.abs(v[:-1])))[0]
    if inc.size:
        j = int(inc[0])
        return PropertyVerdict(
            name, False, {"t": [float(t[j]), float(t[j + 1])], "value": [float(v[j]), float(v[j + 1])], "violated": "nonincreasing"}, MONOTONE_TOL
        )
    return PropertyVerdict(name, True, None, MONOTONE_TOL)


def hypothesis_audit(spec: ProblemSpec) -> list[PropertyVerdict]:
    """Checks of the three standing hypotheses for a structured right-hand side."""
    r = spec.rhs
    if not isinstance(r, Structured):
        note = "general right-hand side; standing hypotheses apply to structured specs only"
        return [
            PropertyVerdict(n, False, None, skipped=True, note=note)
            for n in ("hypothesis (1): phi", "hypothesis (2): l", "hypothesis (3): k")
        ]
    beta = spec.beta
    out = [audit_phi(r.phi, r.mu)]
    if r.mu >= 1.0:
        out[0] = PropertyVerdict(out[0].name, False, {"mu": r.mu, "violated": "mu < 1"})
    out.append(audit_weighted(r.l, beta, "hypothesis (2): l", beta + (1.0 - r.mu) * (1.0 - beta)))
    out.append(audit_weighted(r.k, beta, "hypothesis (3): k", 1.0))
    return out


def verify_solution(spec: ProblemSpec, traj: WeightedTrajectory, tol: float | None = None) -> list[PropertyVerdict]:
    """Hypothesis audit, monotone positive conclusion, and the residual contract."""
    tol = spec.solver.tol if tol is None else tol
    verdicts = hypothesis_audit(spec)
    hyp_ok = all(v.passed for v in verdicts) and spec.x0 > 0
    x = traj.x[1:]
    if hyp_ok:
        slack = 1e-8
        bad_pos = np.nonzero(~(x > 0))[0]
        up = np.nonzero(np.diff(x) > slack * np.maximum(1.0, np.abs(x[:-1])))[0]
        if bad_pos.size:
            j = int(bad_pos[0]) + 1
            v = PropertyVerdict("conclusion: positive nonincreasing", False, {"t": float(traj.t[j]), "x": float(traj.x[j])}, slack)
        elif up.size:
            j = int(up[0]) + 1
            v = PropertyVerdict(
                "conclusion: positive nonincreasing",
                False,
                {"t": [float(traj.t[j]), float(traj.t[j + 1])], "x": [float(traj.x[j]), float(traj.x[j + 1])]},
                slack,
            )
        else:
            v = PropertyVerdict("conclusion: positive nonincreasing", True, None, slack)
    else:
        v = PropertyVerdict("conclusion: positive nonincreasing", False, None, skipped=True, note="hypotheses not satisfied")
    verdicts.append(v)
    res = traj.residual if math.isfinite(traj.residual) else residual(spec, traj)
    limit = 10.0 * tol
    verdicts.append(PropertyVerdict("Volterra residual", res <= limit, {"residual": res}, limit))
    return verdicts


def write_csv(traj: WeightedTrajectory, path) -> None:
    """Rows ``t,w,x`` at 17 significant digits; ``x`` at ``t = 0`` is written as inf/-inf/0."""
    x = traj.x
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "w", "x"])
        for tj, wj, xj in zip(traj.t, traj.w, x):
            writer.writerow([f"{tj:.17g}", f"{wj:.17g}", f"{xj:.17g}"])

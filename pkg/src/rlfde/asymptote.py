"""Long-time limits: prediction from the scalar limit equation and extrapolation of solver tails.

With ``a = lim t^beta l(t)`` and ``b = lim t^beta k(t)`` the candidate limits
are the nonnegative roots of

    x = C (a phi(x) + b),    C = pi / (Gamma(beta) sin(beta pi)).

:func:`classify` decides, by auditing sampled hypotheses, which of the
known limit statements applies to a problem and what limit it predicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .expr import EvalError, Expression
from .fracint import MONOTONE_TOL, PropertyVerdict, SingularFunction, aitken
from .solver import (
    AUDIT_GRID,
    General,
    ProblemSpec,
    Structured,
    WeightedTrajectory,
    audit_phi,
    hypothesis_audit,
)
from .special import gamma, resolvent_constant

__all__ = [
    "TailCoefficient",
    "AsymptoteReport",
    "Extrapolation",
    "LimitEquationError",
    "TooShortError",
    "limit_constant",
    "tail_coefficient",
    "decay_exponent",
    "tail_exponent",
    "solve_limit_equation",
    "select_limit",
    "classify",
    "extrapolate_limit",
    "report_json",
    "THEOREMS",
]

THEOREMS = ("3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "none")

TAIL_LADDER = tuple(2.0**k for k in range(6, 41))
SCAN_POINTS = 10_000
ROOT_TOL = 1e-12


class LimitEquationError(RuntimeError):
    pass


class TooShortError(ValueError):
    pass


def limit_constant(beta: float) -> float:
    """``pi / (Gamma(beta) sin(beta pi))``."""
    return resolvent_constant(beta) / gamma(beta)


# ---------------------------------------------------------------------------
# tail coefficients


@dataclass(frozen=True)
class TailCoefficient:
    value: float
    converged: bool
    samples: tuple


def _weighted_samples(g, beta: float, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if isinstance(g, SingularFunction):
        return g.weighted(t, beta)
    out = np.broadcast_to(np.asarray(g(t=t), dtype=float), t.shape)
    return t**beta * out


def tail_coefficient(g, beta: float, ladder=TAIL_LADDER) -> TailCoefficient:
    """``lim t^beta g(t)`` from ``t = 2^6 .. 2^40`` by Aitken extrapolation.

    Values below 1e-9 in magnitude are reported as exactly 0. A ladder whose
    steps do not shrink raises ``ValueError``.
    """
    v = _weighted_samples(g, beta, ladder)
    if not np.all(np.isfinite(v)):
        raise ValueError("t^beta g(t) is not finite on the tail ladder")
    steps = np.abs(np.diff(v))
    scale = max(1.0, float(np.max(np.abs(v))))
    if steps[-1] > 1e-12 * scale and np.all(np.diff(steps[-6:]) >= 0):
        raise ValueError(f"t^beta g(t) does not settle on the tail ladder (last values {v[-3:]})")
    acc = aitken(v)
    value = float(acc[-1])
    converged = abs(acc[-1] - acc[-2]) <= 1e-6 * max(1.0, abs(value))
    if abs(value) < 1e-9:
        value = 0.0
    return TailCoefficient(value, bool(converged), tuple(float(s) for s in v[-3:]))


def decay_exponent(g, beta: float, limit: float) -> float:
    """Rate ``lambda`` in ``t^beta g(t) - limit ~ t^-lambda``; ``inf`` if the difference vanishes."""
    t = np.array([2.0**18, 2.0**20, 2.0**22])
    d = np.abs(_weighted_samples(g, beta, t) - limit)
    floor = 1e-13 * max(1.0, abs(limit))
    if np.all(d <= floor):
        return math.inf
    if np.any(d <= floor):
        return math.inf
    lam = -math.log2(d[2] / d[0]) / 4.0
    return max(lam, 0.0)


def _raw_decay(g, t0: float = 2.0**18) -> float:
    """Decay rate of ``|g(t)|`` itself."""
    t = np.array([t0, 4 * t0])
    v = np.abs(_weighted_samples(g, 0.0, t))
    if np.all(v == 0):
        return math.inf
    if np.any(v == 0):
        return math.inf
    return -math.log2(v[1] / v[0]) / 2.0


def tail_exponent(spec: ProblemSpec) -> float:
    """Slowest algebraic rate at which the forcing approaches its limit form.

    The minimum of ``1 - beta`` (initial-data term) and the decay rates of
    ``t^beta l - a``, ``t^beta k - b`` (envelopes for general specs).
    """
    rates = [1.0 - spec.beta]
    funcs = []
    r = spec.rhs
    if isinstance(r, Structured):
        funcs = [r.l, r.k]
    elif r.envelopes is not None:
        e = r.envelopes
        funcs = [e.l, e.k, e.l1, e.k1]
    for g in funcs:
        try:
            lim = tail_coefficient(g, spec.beta).value
            rates.append(decay_exponent(g, spec.beta, lim))
        except (ValueError, EvalError):
            continue
    return float(min(rates))


# ---------------------------------------------------------------------------
# limit equation


def _scan_roots(func, hi: float, points: int = SCAN_POINTS, lo: float = 0.0) -> list[float]:
    x = np.linspace(lo, hi, points + 1)
    v = np.broadcast_to(np.asarray(func(x), dtype=float), x.shape)
    roots: list[float] = []
    for i, vi in enumerate(v):
        if vi == 0.0:
            roots.append(float(x[i]))
    sign = np.sign(v)
    for i in range(points):
        if sign[i] != 0 and sign[i + 1] != 0 and sign[i] != sign[i + 1]:
            a, b, fa = float(x[i]), float(x[i + 1]), float(v[i])
            while b - a > ROOT_TOL * max(1.0, abs(a)):
                m = 0.5 * (a + b)
                fm = float(func(m))
                if fm == 0.0:
                    a = b = m
                    break
                if (fm < 0) == (fa < 0):
                    a, fa = m, fm
                else:
                    b = m
            roots.append(0.5 * (a + b))
    return sorted(roots)


def _fitted_M(phi: Expression, mu: float) -> float:
    w = audit_phi(phi, mu, require_monotone=False).witness or {}
    return float(w.get("M", 1.0))


def _scan_bound(C: float, a: float, b: float, M: float, mu: float) -> float:
    if mu < 1.0:
        return 2.0 * max((2.0 * C * a * M) ** (1.0 / (1.0 - mu)) if a > 0 else 0.0, 2.0 * C * b) + 1.0
    return 1e6


def solve_limit_equation(phi: Expression, a: float, b: float, beta: float, mu: float = 0.0, M: float | None = None):
    """Sorted nonnegative roots of ``x - C (a phi(x) + b)``.

    The scan covers ``[0, X]`` where ``X`` bounds every root given
    ``phi(x) <= M x^mu`` with ``mu < 1``; ``M`` is fitted when omitted.
    """
    C = limit_constant(beta)
    if a == 0.0:
        return [C * b]
    if a < 0 or b < 0:
        raise ValueError("the limit equation is set up for a, b >= 0")
    if M is None:
        M = _fitted_M(phi, mu)

    def g(x):
        return x - C * (a * np.asarray(phi(x=x), dtype=float) + b)

    hi = _scan_bound(C, a, b, M, mu)
    roots = _scan_roots(g, hi)
    if not roots and mu < 1.0:
        raise LimitEquationError(f"no nonnegative root on [0, {hi}] although x - C(a phi + b) -> +inf")
    return roots


def select_limit(roots, phi: Expression | None = None, a: float = 0.0, b: float = 0.0, beta: float = 0.5, mu: float = 0.0):
    """Largest root, with a check that the equation shifted by it has no positive root.

    Returns ``(limit, verdict)``; the verdict is ``None`` when ``phi`` is not given.
    """
    if len(roots) == 0:
        raise ValueError("no roots to select from")
    x_star = float(max(roots))
    if phi is None or a == 0.0:
        return x_star, None
    C = limit_constant(beta)
    M = _fitted_M(phi, mu)
    hi = max(_scan_bound(C, a, b, M, mu) - x_star, 1.0)

    def h(z):
        return C * (a * np.asarray(phi(x=z + x_star), dtype=float) + b) - x_star - z

    shifted = _scan_roots(h, hi)
    positive = [z for z in shifted if z > 1e-9 * max(1.0, x_star)]
    verdict = PropertyVerdict(
        "shifted limit equation has only the root 0",
        not positive,
        {"positive_roots": positive} if positive else None,
        1e-9,
    )
    return x_star, verdict


# ---------------------------------------------------------------------------
# classification


@dataclass
class AsymptoteReport:
    a: float | None
    b: float | None
    roots: list
    predicted_limit: float | None
    governing_theorem: str
    hypothesis_audit: list = field(default_factory=list)
    extrapolated_solver_limit: float | None = None
    agreement: float | None = None
    uncertainty: float | None = None
    tail_exponent: float | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "roots": list(self.roots),
            "predicted_limit": self.predicted_limit,
            "governing_theorem": self.governing_theorem,
            "hypothesis_audit": [v.to_dict() for v in self.hypothesis_audit],
            "extrapolated_solver_limit": self.extrapolated_solver_limit,
            "agreement": self.agreement,
            "uncertainty": self.uncertainty,
            "tail_exponent": self.tail_exponent,
            "notes": list(self.notes),
        }


def _odd_power(x, mu):
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.abs(x) ** mu


def _expr_t(g, t):
    t = np.asarray(t, dtype=float)
    if isinstance(g, SingularFunction):
        return g.rho(t)
    return np.broadcast_to(np.asarray(g(t=t), dtype=float), t.shape)


def _audit_nonnegative(g, name: str, grid=AUDIT_GRID) -> PropertyVerdict:
    v = _expr_t(g, grid)
    bad = np.nonzero(v < -MONOTONE_TOL)[0]
    if bad.size:
        j = int(bad[0])
        return PropertyVerdict(name, False, {"t": float(grid[j]), "value": float(v[j])}, MONOTONE_TOL)
    return PropertyVerdict(name, True, None, MONOTONE_TOL)


def _audit_power_bound(g, gam: float, name: str) -> PropertyVerdict:
    """``t^gamma |g(t)|`` bounded on ``[1, 1e6]``: finite and not growing over the last decades."""
    t = np.logspace(0, 6, 121)
    v = t**gam * np.abs(_expr_t(g, t))
    K = float(np.max(v))
    tail = v[60:]
    growing = np.nonzero(np.diff(tail) > MONOTONE_TOL * np.maximum(1.0, tail[:-1]))[0]
    if not np.all(np.isfinite(v)) or growing.size:
        j = int(growing[0]) + 60 if growing.size else 0
        return PropertyVerdict(name, False, {"gamma": gam, "t": float(t[j]), "value": float(v[j])}, MONOTONE_TOL)
    return PropertyVerdict(name, True, {"gamma": gam, "K": K}, MONOTONE_TOL)


def _choose_gamma(spec: ProblemSpec, l) -> float | None:
    env = spec.rhs.envelopes
    if env is not None and env.gamma is not None:
        return env.gamma
    lam = _raw_decay(l)
    if not lam > spec.beta:
        return None
    return spec.beta + (min(lam, 1.0) - spec.beta) / 2.0


def _lp_condition(alpha_l: float, alpha_k: float, beta: float, mu: float) -> PropertyVerdict:
    ok_l = alpha_l < beta + (1.0 - mu) * (1.0 - beta)
    ok_k = alpha_k < 1.0
    return PropertyVerdict(
        "local integrability of the weighted coefficients",
        ok_l and ok_k,
        None if (ok_l and ok_k) else {"alpha_l": alpha_l, "alpha_k": alpha_k},
    )


def _envelopes(spec: ProblemSpec):
    """``(l, k, l1, k1, mu)``: declared envelopes, or ``l = l1``, ``k = k1`` for structured specs."""
    r = spec.rhs
    if r.envelopes is not None:
        e = r.envelopes
        return e.l, e.k, e.l1, e.k1, r.mu
    if isinstance(r, Structured):
        return r.l, r.k, r.l, r.k, r.mu
    return None


def _audit_sandwich(spec: ProblemSpec, l, k, l1, k1, mu) -> PropertyVerdict:
    """``l1 x^mu + k1 <= f <= l x^mu + k`` on a (t, x) grid, ``x^mu`` extended oddly to x < 0.

    The inequality is required for ``x >= 0``; the outcome for ``x < 0`` is
    recorded in the witness. Grid points where ``f`` or an envelope cannot
    be evaluated are left out and counted.
    """
    t = np.logspace(-4, 4, 41)
    xs = np.concatenate([-np.logspace(3, -3, 25), [0.0], np.logspace(-3, 3, 25)])
    tol = 1e-9
    excluded = 0
    first_bad = {True: None, False: None}  # keyed by x >= 0
    for ti in t:
        for xi in xs:
            try:
                fv = float(spec.f(ti, xi))
                px = float(_odd_power(xi, mu))
                up = float(_expr_t(l, ti)) * px + float(_expr_t(k, ti))
                lo = float(_expr_t(l1, ti)) * px + float(_expr_t(k1, ti))
            except EvalError:
                excluded += 1
                continue
            slack = tol * max(1.0, abs(fv))
            if (fv > up + slack or fv < lo - slack) and first_bad[xi >= 0] is None:
                first_bad[xi >= 0] = {"t": float(ti), "x": float(xi), "f": fv, "lower": lo, "upper": up}
    witness = {"excluded_points": excluded, "holds_for_negative_x": first_bad[False] is None}
    note = "" if first_bad[False] is None else "envelopes hold on x >= 0 only"
    if first_bad[True] is not None:
        witness["violation"] = first_bad[True]
        return PropertyVerdict("sandwich envelopes", False, witness, tol, note=note)
    if first_bad[False] is not None:
        witness["negative_x_violation"] = first_bad[False]
    return PropertyVerdict("sandwich envelopes", True, witness, tol, note=note)


def classify(spec: ProblemSpec) -> AsymptoteReport:
    """Pick the applicable limit statement by auditing its hypotheses in a fixed order."""
    beta = spec.beta
    r = spec.rhs
    C = limit_constant(beta)
    audit: list[PropertyVerdict] = []
    notes: list[str] = []

    # (i) monotone case
    if isinstance(r, Structured):
        hyp = hypothesis_audit(spec)
        audit.extend(hyp)
        if all(v.passed for v in hyp):
            a = tail_coefficient(r.l, beta).value
            b = tail_coefficient(r.k, beta).value
            phi_M = (hyp[0].witness or {}).get("M", 1.0)
            if a == 0.0:
                limit = C * b
                thm = "3.4" if b == 0.0 else "3.3"
                return AsymptoteReport(a, b, [limit], limit, thm, audit, notes=notes)
            roots = solve_limit_equation(r.phi, a, b, beta, r.mu, phi_M)
            limit, shift_verdict = select_limit(roots, r.phi, a, b, beta, r.mu)
            if shift_verdict is not None:
                audit.append(shift_verdict)
            if len(roots) == 1:
                thm = "3.2"
            else:
                thm = "3.5"
                notes.append(f"limit equation has {len(roots)} nonnegative roots; largest-root rule applied")
            if shift_verdict is not None and not shift_verdict.passed:
                notes.append("shifted limit equation has a positive root")
            return AsymptoteReport(a, b, roots, limit, thm, audit, notes=notes)
    else:
        audit.extend(hypothesis_audit(spec))

    env = _envelopes(spec)

    # (ii) non-monotone l, convergent t^beta k >= 0
    if isinstance(r, Structured):
        gam = _choose_gamma(spec, r.l)
        checks = [
            _lp_condition(r.alpha_l, r.alpha_k, beta, r.mu),
            _audit_nonnegative(r.l, "l nonnegative"),
            _audit_nonnegative(r.k, "k nonnegative"),
            audit_phi(r.phi, r.mu, require_monotone=False),
        ]
        if gam is None:
            checks.append(PropertyVerdict("decay exponent gamma > beta", False, {"beta": beta}))
        else:
            checks.append(_audit_power_bound(r.l, gam, "t^gamma l bounded on [1, inf)"))
        b_tail = None
        try:
            b_tail = tail_coefficient(r.k, beta)
            checks.append(PropertyVerdict("lim t^beta k >= 0", b_tail.value >= 0, {"b": b_tail.value}))
        except ValueError as exc:
            checks.append(PropertyVerdict("lim t^beta k exists", False, {"error": str(exc)}))
        if all(v.passed for v in checks):
            audit.extend(checks)
            b = b_tail.value
            return AsymptoteReport(None, b, [C * b], C * b, "3.6", audit, notes=notes)
        notes.append("bounded-decay case (l with t^gamma bound) rejected: " + ", ".join(v.name for v in checks if not v.passed))

    # (iii) sandwich envelopes
    if env is not None:
        l, k, l1, k1, mu = env
        gam = _choose_gamma(spec, l)
        checks = [_audit_sandwich(spec, l, k, l1, k1, mu)]
        if gam is None:
            checks.append(PropertyVerdict("decay exponent gamma > beta", False, {"beta": beta}))
        else:
            checks.append(_audit_power_bound(l, gam, "t^gamma |l| bounded on [1, inf)"))
            checks.append(_audit_power_bound(l1, gam, "t^gamma |l1| bounded on [1, inf)"))
        try:
            bk = tail_coefficient(k, beta).value
            bk1 = tail_coefficient(k1, beta).value
            same = abs(bk - bk1) <= 1e-8 * max(1.0, abs(bk))
            checks.append(PropertyVerdict("lim t^beta k = lim t^beta k1", same, {"b": bk, "b1": bk1}))
        except ValueError as exc:
            bk = None
            checks.append(PropertyVerdict("lim t^beta k exists", False, {"error": str(exc)}))
        if all(v.passed for v in checks):
            audit.extend(checks)
            if bk < 0:
                notes.append("negative b accepted in the sandwich case")
            return AsymptoteReport(None, bk, [C * bk], C * bk, "3.7", audit, notes=notes)
        notes.append("sandwich case rejected: " + ", ".join(v.name for v in checks if not v.passed))

    # (iv) both envelopes decay faster than t^-gamma
    if env is not None:
        l, k, _, _, mu = env
        gam = _choose_gamma(spec, l)
        checks = [
            _audit_nonnegative(l, "l nonnegative"),
            _audit_nonnegative(k, "k nonnegative"),
            _audit_abs_bound(spec, l, k, mu),
        ]
        if gam is None:
            checks.append(PropertyVerdict("decay exponent gamma > beta", False, {"beta": beta}))
        else:
            checks.append(_audit_power_bound(l, gam, "t^gamma l bounded on [1, inf)"))
            checks.append(_audit_power_bound(k, gam, "t^gamma k bounded on [1, inf)"))
        if all(v.passed for v in checks):
            audit.extend(checks)
            return AsymptoteReport(None, None, [0.0], 0.0, "3.8", audit, notes=notes)
        notes.append("decaying-bound case rejected: " + ", ".join(v.name for v in checks if not v.passed))

    return AsymptoteReport(None, None, [], None, "none", audit, notes=notes)


def _audit_abs_bound(spec: ProblemSpec, l, k, mu) -> PropertyVerdict:
    t = np.logspace(-4, 4, 41)
    xs = np.concatenate([-np.logspace(3, -3, 25), [0.0], np.logspace(-3, 3, 25)])
    for ti in t:
        for xi in xs:
            try:
                fv = float(spec.f(ti, xi))
                up = float(_expr_t(l, ti)) * abs(xi) ** mu + float(_expr_t(k, ti))
            except EvalError:
                continue
            if abs(fv) > up + 1e-9 * max(1.0, abs(fv)):
                return PropertyVerdict("|f| <= l |x|^mu + k", False, {"t": float(ti), "x": float(xi), "f": fv, "bound": up})
    return PropertyVerdict("|f| <= l |x|^mu + k", True, None, 1e-9)


# ---------------------------------------------------------------------------
# extrapolation


@dataclass(frozen=True)
class Extrapolation:
    limit: float
    uncertainty: float
    method: str
    monotone_tail: bool
    refused: bool = False
    note: str = ""


def _tail_window(traj: WeightedTrajectory, decades: float):
    T = traj.T
    if T < 10.0**decades:
        raise TooShortError(f"trajectory ends at t={T:g}; need at least {decades:g} decades beyond t = 1")
    t, x = traj.t[1:], traj.x[1:]
    mask = t >= T / 10.0**decades
    return t[mask], x[mask]


def _monotone(x) -> bool:
    d = np.diff(x)
    slack = 1e-12 * np.maximum(1.0, np.abs(x[1:]))
    return bool(np.all(d <= slack) or np.all(d >= -slack))


def _series_fit(t, x, p: float, terms: int) -> float:
    u = (t / t[-1]) ** (-p)
    u = u / u.max()
    V = np.vander(u, terms + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(V, x, rcond=None)
    return float(coef[0])


def extrapolate_limit(
    traj: WeightedTrajectory,
    exponent: float | None = None,
    *,
    decades: float = 3.0,
    terms: int = 5,
    checkpoint_ratio: float = 9.0,
) -> Extrapolation:
    """Estimate ``lim x(t)`` from the last ``decades`` decades of the trajectory.

    Without ``exponent``: Aitken on ``x`` at geometric checkpoints (ratio
    about ``checkpoint_ratio``), uncertainty the size of the last Aitken
    correction, and a refusal (``nan``) when the tail is not monotone.

    With ``exponent = p``: least-squares fit of ``x`` by a polynomial of
    degree ``terms`` in ``t^-p`` over every node in the window; uncertainty
    is the change when one term is dropped. Non-monotone tails are accepted
    and flagged.
    """
    t, x = _tail_window(traj, decades)
    mono = _monotone(x)
    if exponent is None:
        logs = np.diff(np.log(t))
        if logs.size and np.ptp(logs) <= 1e-9 * logs.mean():
            # geometric tail mesh: a fixed index stride gives exactly geometric checkpoints
            stride = max(1, int(round(math.log(checkpoint_ratio) / logs.mean())))
            idx = list(range(t.size - 1, -1, -stride))[::-1]
        else:
            targets = t[-1] / checkpoint_ratio ** np.arange(int(decades * math.log(10) / math.log(checkpoint_ratio)) + 1)
            idx = sorted({int(np.argmin(np.abs(np.log(t / tt)))) for tt in targets})
        if len(idx) < 3:
            raise TooShortError("fewer than three checkpoints in the tail window")
        xs = x[idx]
        if not mono:
            return Extrapolation(math.nan, math.inf, "aitken", False, True, "tail is not monotone")
        est = float(aitken(xs)[-1])
        return Extrapolation(est, abs(est - float(xs[-1])), "aitken", True)
    if not exponent > 0:
        raise ValueError("tail exponent must be positive")
    if t.size < terms + 3:
        raise TooShortError(f"only {t.size} nodes in the tail window")
    est = _series_fit(t, x, exponent, terms)
    alt = _series_fit(t, x, exponent, terms - 1)
    note = "" if mono else "tail is not monotone"
    return Extrapolation(est, abs(est - alt), "power series", mono, False, note)


# ---------------------------------------------------------------------------
# JSON


def _fmt(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return "null" if obj is None else ("true" if obj else "false")
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return "null"
        return f"{v:.17g}" if ("e" in f"{v:.17g}" or "." in f"{v:.17g}") else f"{v:.17g}.0"
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{_fmt(str(k), indent, level + 1)}: {_fmt(v, indent, level + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + _fmt(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def report_json(report: AsymptoteReport | dict, indent: int = 2) -> str:
    """JSON text with every real number written at 17 significant digits."""
    data = report.to_dict() if isinstance(report, AsymptoteReport) else report
    return _fmt(data, indent, 0)

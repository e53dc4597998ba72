"""Fractional integrals ``y(t) = int_0^t (t-s)^(beta-1) rho(s) ds`` and grid checks of their properties.

``rho`` is a :class:`SingularFunction`: an expression plus a declared
exponent ``alpha`` such that ``s^alpha rho(s)`` is continuous at 0. The
substitution ``s = t v`` gives

    y(t) = t^(beta - alpha) int_0^1 (1-v)^(beta-1) v^(-alpha) sigma(t v) dv,

with ``sigma(s) = s^alpha rho(s)``, and both endpoint factors go into the
quadrature weight.

The ``check_*`` functions turn continuum statements (monotonicity, limits,
an L^p bound, continuity of the weighted integral at 0) into verdicts on
finite grids.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .expr import Expression
from .quadrature import QuadratureWarning, integrate_singular
from .special import DomainError, beta_fn, resolvent_constant

__all__ = [
    "SingularFunction",
    "PropertyVerdict",
    "FracResult",
    "frac_integral",
    "aitken",
    "check_monotone",
    "tail_limit",
    "turning_point_g",
    "find_turning_point",
    "check_weak_singular_bound",
    "check_weighted_continuity",
    "MONOTONE_TOL",
]

MONOTONE_TOL = 1e-9


@dataclass(frozen=True)
class SingularFunction:
    """``rho(s) = s^(-alpha) sigma(s)`` given by the expression for ``rho`` itself."""

    expr: Expression
    alpha: float = 0.0

    def __post_init__(self):
        if len(self.expr.variables) != 1:
            raise ValueError("a singular function has exactly one variable")
        if not (0.0 <= self.alpha < 1.0):
            raise DomainError(f"declared exponent alpha must lie in [0, 1), got {self.alpha}")

    @classmethod
    def parse(cls, source: str, alpha: float = 0.0, var: str = "s") -> "SingularFunction":
        return cls(Expression.parse(source, [var]), float(alpha))

    @property
    def var(self) -> str:
        return self.expr.variables[0]

    @property
    def source(self) -> str:
        return self.expr.source

    def rho(self, s):
        s_arr = np.asarray(s, dtype=float)
        out = self.expr(**{self.var: s_arr})
        if s_arr.ndim == 0:
            return float(out)
        return np.broadcast_to(np.asarray(out, dtype=float), s_arr.shape)

    def __call__(self, s):
        return self.rho(s)

    def sigma(self, s):
        s_arr = np.asarray(s, dtype=float)
        if self.alpha == 0.0:
            return self.rho(s_arr)
        return s_arr**self.alpha * self.rho(s_arr)

    def weighted(self, s, beta: float):
        """``s^beta rho(s)``."""
        s_arr = np.asarray(s, dtype=float)
        return s_arr**beta * self.rho(s_arr)

    def is_zero(self) -> bool:
        return self.expr.is_constant() and float(self.expr()) == 0.0


@dataclass
class PropertyVerdict:
    name: str
    passed: bool
    witness: dict | None = None
    tolerance: float | None = None
    skipped: bool = False
    note: str = ""

    def __post_init__(self):
        if not self.passed and not self.skipped and self.witness is None:
            raise ValueError("a failed verdict needs a witness")

    @property
    def status(self) -> str:
        if self.skipped:
            return "skip"
        return "pass" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "skipped": self.skipped,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "note": self.note,
        }


@dataclass(frozen=True)
class FracResult:
    value: object
    error: float
    n: int
    converged: bool


def _check_beta(beta):
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")


def _left_levels(tmax: float) -> int:
    # dyadic panels down to roughly 2^-8 / t so sigma(t v) is resolved on [0, 1/t]
    return int(min(70, max(8, math.ceil(math.log2(max(tmax, 1.0))) + 8)))


def frac_integral(rho: SingularFunction, beta: float, t, *, rtol: float = 1e-10, full_output: bool = False):
    """``y(t) = int_0^t (t-s)^(beta-1) rho(s) ds`` for scalar or array ``t > 0``."""
    _check_beta(beta)
    t_arr = np.asarray(t, dtype=float)
    if np.any(~(t_arr > 0)) or np.any(~np.isfinite(t_arr)):
        raise DomainError("t must be finite and positive")
    if rho.is_zero():
        value = np.zeros_like(t_arr) if t_arr.ndim else 0.0
        res = FracResult(value, 0.0, 0, True)
        return res if full_output else value
    flat = t_arr.reshape(-1)
    levels = (_left_levels(float(flat.max())), 6)
    a, b = beta - 1.0, -rho.alpha

    def integrand(v):
        return rho.sigma(flat[:, None] * v[None, :])

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", QuadratureWarning)
        q = integrate_singular(integrand, a, b, rtol=rtol, levels=levels)
    for w in caught:
        warnings.warn(w.message, w.category, stacklevel=2)
    value = flat ** (beta - rho.alpha) * np.asarray(q.value)
    if t_arr.ndim == 0:
        value = float(value[0])
    else:
        value = value.reshape(t_arr.shape)
    if full_output:
        scale = float(np.max(flat ** (beta - rho.alpha)))
        return FracResult(value, q.error * scale, q.n, q.converged)
    return value


def aitken(seq) -> np.ndarray:
    """Aitken delta-squared transform ``x2 - (x2-x1)^2 / (x2 - 2 x1 + x0)`` over consecutive triples.

    Where the second difference vanishes the last term is returned unchanged.
    """
    x = np.asarray(seq, dtype=float)
    if x.size < 3:
        raise ValueError("Aitken extrapolation needs at least three values")
    d1 = x[2:] - x[1:-1]
    d2 = x[2:] - 2.0 * x[1:-1] + x[:-2]
    safe = np.where(d2 == 0.0, 1.0, d2)
    return np.where(d2 == 0.0, x[2:], x[2:] - d1 * d1 / safe)


def _monotone_violation(values, direction: str, tol: float):
    v = np.asarray(values, dtype=float)
    diff = np.diff(v)
    slack = tol * np.maximum(1.0, np.maximum(np.abs(v[:-1]), np.abs(v[1:])))
    bad = diff > slack if direction == "nonincreasing" else diff < -slack
    idx = np.nonzero(bad)[0]
    return None if idx.size == 0 else int(idx[0])


def _default_grid():
    return np.logspace(-3, 3, 200)


def check_monotone(
    rho: SingularFunction,
    beta: float,
    grid: Sequence[float] | None = None,
    direction: str = "nonincreasing",
    tol: float = MONOTONE_TOL,
) -> PropertyVerdict:
    """If ``t^beta rho(t)`` is monotone on the grid, ``y`` must be monotone the same way."""
    if direction not in ("nonincreasing", "nondecreasing"):
        raise ValueError(f"unknown direction {direction!r}")
    t = np.asarray(_default_grid() if grid is None else grid, dtype=float)
    if t.ndim != 1 or t.size < 2 or np.any(t <= 0) or np.any(np.diff(t) <= 0):
        raise ValueError("grid must be positive and strictly increasing")
    hyp_vals = rho.weighted(t, beta)
    y = frac_integral(rho, beta, t)
    hyp_bad = _monotone_violation(hyp_vals, direction, tol)
    con_bad = _monotone_violation(y, direction, tol)
    hyp_ok, con_ok = hyp_bad is None, con_bad is None
    witness = None
    if not (hyp_ok and con_ok):
        witness = {}
        if not hyp_ok:
            j = hyp_bad
            witness["hypothesis"] = {"t": [t[j], t[j + 1]], "t^beta rho": [hyp_vals[j], hyp_vals[j + 1]]}
        if not con_ok:
            j = con_bad
            witness["conclusion"] = {"t": [t[j], t[j + 1]], "y": [y[j], y[j + 1]]}
    note = "" if hyp_ok else "hypothesis does not hold on the grid; verdict is vacuous"
    return PropertyVerdict(f"monotone {direction}", (not hyp_ok) or con_ok, witness, tol, note=note)


def _tail_coefficient(rho: SingularFunction, beta: float, t_ladder) -> float:
    vals = rho.weighted(np.asarray(t_ladder, dtype=float), beta)
    return float(aitken(vals[-3:])[-1])


def tail_limit(
    rho: SingularFunction,
    beta: float,
    t_ladder: Sequence[float] | None = None,
    tol: float = 1e-3,
):
    """Extrapolated ``lim y(t)`` against the prediction ``a pi / sin(beta pi)``, ``a = lim t^beta rho``.

    Returns ``(estimate, verdict)``. The default ladder is ``2^k``, ``k = 0..40``.
    """
    _check_beta(beta)
    t = np.asarray([2.0**k for k in range(41)] if t_ladder is None else t_ladder, dtype=float)
    if t.size < 6:
        raise ValueError("tail ladder needs at least 6 points")
    ratios = t[1:] / t[:-1]
    if np.any(ratios < 2.0 * (1 - 1e-12)) or np.ptp(ratios) > 1e-9 * ratios.max():
        raise ValueError("tail ladder must be geometric with ratio >= 2")
    a = _tail_coefficient(rho, beta, t)
    predicted = a * resolvent_constant(beta)
    y = frac_integral(rho, beta, t)
    acc = aitken(y)
    estimate = float(acc[-1])
    gap = abs(estimate - predicted) / max(abs(predicted), 1.0)
    steps = np.abs(np.diff(y))
    diverging = bool(steps.size >= 3 and np.all(np.diff(steps) > 0) and steps[-1] > 0)
    witness = {
        "a": a,
        "predicted": predicted,
        "extrapolated": estimate,
        "gap": gap,
        "last_samples": [float(v) for v in y[-3:]],
    }
    passed = gap <= tol and not diverging
    note = "ladder shows no convergence trend" if diverging else ""
    return estimate, PropertyVerdict("tail limit", passed, witness, tol, note=note)


def turning_point_g(t):
    """``g(t) = sqrt(t / (1+t)) ln(sqrt(1+t) + sqrt(t))``; y' changes sign where g = 1 for rho = 1/(1+s), beta = 1/2."""
    return math.sqrt(t / (1.0 + t)) * math.log(math.sqrt(1.0 + t) + math.sqrt(t))


def find_turning_point(lo: float = 1.0, hi: float = 10.0, tol: float = 1e-12) -> float:
    """Root of ``g(t) = 1`` by bisection on ``[lo, hi]``."""
    g1 = turning_point_g(1.0)
    if not g1 < 1.0:
        raise AssertionError(f"expected g(1) < 1, got {g1}")
    flo, fhi = turning_point_g(lo) - 1.0, turning_point_g(hi) - 1.0
    if flo * fhi > 0:
        raise ValueError(f"g - 1 does not change sign on [{lo}, {hi}]")
    while hi - lo > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        fm = turning_point_g(mid) - 1.0
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_weak_singular_bound(rho: SingularFunction, beta: float, p: float, t: float) -> PropertyVerdict:
    """``|int_0^t (t/(t-s))^(1-beta) rho ds| <= 2^(1/q) t^(beta-1/p) (q beta - q + 1)^(-1/q) ||s^(1-beta) rho||_p``.

    Requires ``p > 1/beta``; ``q`` is the conjugate exponent. The L^p norm is
    over ``[0, t]``. A non-integrable ``s^(p(1-beta)) |rho|^p`` or a
    non-converging quadrature flags the verdict.
    """
    _check_beta(beta)
    if not p * beta > 1.0:
        raise DomainError(f"need p > 1/beta, got p={p}, beta={beta}")
    if not 0.0 < t <= 1.0:
        raise DomainError(f"t must lie in (0, 1], got {t}")
    q = p / (p - 1.0)
    name = "weak singular bound"
    expo = p * (1.0 - beta - rho.alpha)
    if expo <= -1.0:
        return PropertyVerdict(name, False, {"exponent": expo}, note="s^(1-beta) rho is not p-integrable at 0")
    lhs = t ** (1.0 - beta) * abs(frac_integral(rho, beta, t))
    if rho.is_zero():
        norm = 0.0
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", QuadratureWarning)
            r = integrate_singular(
                lambda u: np.abs(rho.sigma(t * u)) ** p,
                0.0,
                expo,
                levels=(_left_levels(t), 0),
            )
        if not r.converged or not math.isfinite(r.value):
            return PropertyVerdict(name, False, {"lp_integral": r.value, "n": r.n}, note="L^p integral did not converge")
        norm = (t ** (expo + 1.0) * r.value) ** (1.0 / p)
    rhs = 2.0 ** (1.0 / q) * t ** (beta - 1.0 / p) / (q * beta - q + 1.0) ** (1.0 / q) * norm
    slack = 1e-9
    passed = lhs <= rhs * (1.0 + slack)
    witness = {"lhs": lhs, "rhs": rhs, "p": p, "t": t}
    return PropertyVerdict(name, passed, witness, slack)


def check_weighted_continuity(rho: SingularFunction, beta: float, depth: int = 60) -> PropertyVerdict:
    """``t^(1-beta) y(t)`` sampled at ``t = 2^-k`` stays bounded and settles as ``t -> 0``."""
    _check_beta(beta)
    t = 2.0 ** -np.arange(depth + 1, dtype=float)
    v = t ** (1.0 - beta) * frac_integral(rho, beta, t)
    scale = max(1.0, float(np.max(np.abs(v))))
    gaps = np.abs(np.diff(v))
    tail = gaps[len(gaps) // 2 :]
    growing = np.nonzero(np.diff(tail) > 1e-12 * scale)[0]
    finite = bool(np.all(np.isfinite(v)))
    settled = bool(gaps[-1] <= 1e-6 * scale)
    passed = finite and settled and growing.size == 0
    witness = {"t": [float(t[-2]), float(t[-1])], "values": [float(v[-2]), float(v[-1])], "last_gap": float(gaps[-1])}
    return PropertyVerdict("weighted continuity at 0", passed, witness, 1e-6)


def power_law(alpha: float, beta: float, t):
    """Exact ``y`` for ``rho = s^-alpha``: ``B(beta, 1-alpha) t^(beta-alpha)``."""
    return beta_fn(beta, 1.0 - alpha) * np.asarray(t, dtype=float) ** (beta - alpha)

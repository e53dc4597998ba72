"""Gauss-Jacobi quadrature on [0, 1] for weakly singular endpoint weights.

The basic object is the rule for ``int_0^1 (1-v)^a v^b h(v) dv`` with
``a, b > -1``. On top of it sit

* :func:`integrate_singular`, which doubles the node count until two
  successive values agree,
* :func:`graded_rule`, a composite rule with dyadic panels clustered at
  both endpoints, for integrands whose smooth factor has structure on
  scales much smaller than the interval (``sigma(t v)`` for large ``t``),
* :func:`kernel_rule` / :func:`history_weights`, product-integration
  weights for ``int (t-s)^(beta-1) s^(-delta) g(s) ds`` on a mesh.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .special import DomainError, beta_fn

__all__ = [
    "JacobiRule",
    "GradedMesh",
    "QuadResult",
    "QuadratureWarning",
    "jacobi_rule",
    "graded_rule",
    "integrate_singular",
    "kernel_rule",
    "history_weights",
    "history_row",
    "geometric_nodes",
    "N_LADDER",
]

N_LADDER = (8, 16, 32, 64, 128, 256, 512)


class QuadratureWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class JacobiRule:
    n: int
    exponent_a: float
    exponent_b: float
    nodes: np.ndarray
    weights: np.ndarray

    def __call__(self, values) -> float:
        return float(np.dot(values, self.weights))


def _jacobi_pair(n: int, a: float, b: float, x: np.ndarray):
    """P_n and P_{n-1} (standard normalisation) by the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = 0.5 * ((a - b) + (a + b + 2.0) * x)
    if n == 1:
        return p, p_prev
    for k in range(2, n + 1):
        c = 2 * k + a + b
        a1 = 2 * k * (k + a + b) * (c - 2)
        a2 = (c - 1) * (a * a - b * b)
        a3 = (c - 2) * (c - 1) * c
        a4 = 2 * (k + a - 1) * (k + b - 1) * c
        p_prev, p = p, ((a2 + a3 * x) * p - a4 * p_prev) / a1
    return p, p_prev


def _jacobi_derivative(n, a, b, x, p, p_prev):
    c = 2 * n + a + b
    return (n * ((a - b) - c * x) * p + 2 * (n + a) * (n + b) * p_prev) / (c * (1 - x) * (1 + x))


def _newton(n, a, b, x, iters=100, tol=1e-15):
    for _ in range(iters):
        p, pm = _jacobi_pair(n, a, b, x)
        dx = p / _jacobi_derivative(n, a, b, x, p, pm)
        x = x - dx
        if np.max(np.abs(dx)) <= tol:
            break
    return x


def _valid_roots(x, n):
    return (
        x.size == n
        and np.all(np.isfinite(x))
        and np.all(np.abs(x) < 1)
        and np.all(np.diff(x) > 0)
    )


@lru_cache(maxsize=512)
def _rule_arrays(n: int, a: float, b: float):
    if n == 1:
        x = np.array([(b - a) / (a + b + 2.0)])
    else:
        k = np.arange(1, n + 1)
        # Chebyshev-like angles shifted by the endpoint exponents (descending x)
        theta = np.pi * (k + 0.5 * a - 0.25) / (n + 0.5 * (a + b + 1.0))
        x = np.sort(_newton(n, a, b, np.cos(theta)))
        if not _valid_roots(x, n):
            # eigenvalues of the Jacobi matrix as starting points instead
            kk = np.arange(n, dtype=float)
            c = 2 * kk + a + b
            diag = np.where(c == 0, (b - a) / 2, (b * b - a * a) / np.where(c == 0, 1, c * (c + 2)))
            kk1 = kk[1:]
            c1 = 2 * kk1 + a + b
            off = np.sqrt(4 * kk1 * (kk1 + a) * (kk1 + b) * (kk1 + a + b) / (c1**2 * (c1 + 1) * (c1 - 1)))
            jm = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
            x = np.sort(_newton(n, a, b, np.linalg.eigvalsh(jm)))
        if not _valid_roots(x, n):
            raise RuntimeError(f"Gauss-Jacobi node computation failed for n={n}, a={a}, b={b}")
    p, pm = _jacobi_pair(n, a, b, x)
    dp = _jacobi_derivative(n, a, b, x, p, pm)
    w = 1.0 / ((1 - x) * (1 + x) * dp * dp)
    w *= beta_fn(a + 1.0, b + 1.0) / w.sum()
    v = 0.5 * (1.0 + x)
    v.setflags(write=False)
    w.setflags(write=False)
    return v, w


def jacobi_rule(n: int, a: float, b: float) -> JacobiRule:
    """n-point Gauss rule for the weight ``(1-v)^a v^b`` on [0, 1].

    Exact for polynomials of degree ``2n - 1``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    a, b = float(a), float(b)
    if not (a > -1.0 and b > -1.0):
        raise DomainError(f"weight (1-v)^{a} v^{b} is not integrable on [0, 1]")
    v, w = _rule_arrays(int(n), a, b)
    return JacobiRule(int(n), a, b, v, w)


@lru_cache(maxsize=256)
def _graded_arrays(n: int, a: float, b: float, levels_left: int, levels_right: int):
    left = [2.0**-k for k in range(levels_left, 0, -1)]
    right = [1.0 - 2.0**-k for k in range(2, levels_right + 1)]
    cuts = np.array([0.0] + left + right + [1.0])
    if levels_left == 0 and levels_right > 0:
        cuts = np.array([0.0, 0.5] + right + [1.0])
    if len(cuts) == 2:
        return jacobi_rule(n, a, b).nodes, jacobi_rule(n, a, b).weights

    nodes, weights = [], []
    # first panel carries v^b, last panel carries (1-v)^a
    p1 = cuts[1]
    r = jacobi_rule(n, 0.0, b)
    s = p1 * r.nodes
    nodes.append(s)
    weights.append(p1 ** (b + 1.0) * r.weights * (1.0 - s) ** a)

    lo, hi = cuts[1:-2], cuts[2:-1]
    if lo.size:
        g = jacobi_rule(n, 0.0, 0.0)
        h = (hi - lo)[:, None]
        s = lo[:, None] + h * g.nodes[None, :]
        # 1 - s computed from the right cut to keep relative accuracy near v = 1
        one_minus = (1.0 - hi)[:, None] + h * (1.0 - g.nodes)[None, :]
        nodes.append(s.ravel())
        weights.append((h * g.weights[None, :] * one_minus**a * s**b).ravel())

    q = cuts[-2]
    r = jacobi_rule(n, a, 0.0)
    s = q + (1.0 - q) * r.nodes
    nodes.append(s)
    weights.append((1.0 - q) ** (a + 1.0) * r.weights * s**b)

    v = np.concatenate(nodes)
    w = np.concatenate(weights)
    v.setflags(write=False)
    w.setflags(write=False)
    return v, w


def graded_rule(n: int, a: float, b: float, levels: tuple[int, int] = (64, 12)):
    """Composite rule for ``(1-v)^a v^b`` with dyadic panels toward both ends.

    Breakpoints are ``2^-L, ..., 1/2`` on the left and ``1 - 2^-k`` on the
    right; each panel gets an ``n``-point rule, the two end panels carry the
    singular weight exactly. Returns ``(nodes, weights)``.
    """
    if not (a > -1.0 and b > -1.0):
        raise DomainError(f"weight (1-v)^{a} v^{b} is not integrable on [0, 1]")
    return _graded_arrays(int(n), float(a), float(b), int(levels[0]), int(levels[1]))


@dataclass(frozen=True)
class QuadResult:
    value: object  # float, or ndarray when the integrand is batched
    error: float
    n: int
    converged: bool

    def __float__(self) -> float:
        return float(self.value)


def integrate_singular(
    sigma,
    a: float,
    b: float,
    n: int | None = None,
    *,
    n_max: int = 512,
    rtol: float = 1e-10,
    levels: tuple[int, int] | None = None,
) -> QuadResult:
    """Approximate ``int_0^1 (1-v)^a v^b sigma(v) dv``.

    ``sigma`` is called with an array of nodes and may return an array with
    extra leading axes (one integral per leading index). With ``n`` given a
    single rule is applied. Otherwise the node count doubles along
    8, 16, ..., ``n_max`` until successive values differ by at most ``rtol``
    relative; failure to get there is reported through ``converged`` and a
    :class:`QuadratureWarning`, not an exception.

    ``levels`` switches from a single Gauss-Jacobi rule to :func:`graded_rule`.
    """

    def apply(m):
        if levels is None:
            r = jacobi_rule(m, a, b)
            v, w = r.nodes, r.weights
        else:
            v, w = graded_rule(m, a, b, levels)
        vals = np.asarray(sigma(v), dtype=float)
        vals = np.broadcast_to(vals, vals.shape[:-1] + v.shape) if vals.ndim else np.full(v.shape, float(vals))
        out = vals @ w
        return out if out.ndim else float(out)

    if n is not None:
        return QuadResult(apply(n), float("nan"), n, True)

    ladder = [m for m in N_LADDER if m <= n_max]
    prev = apply(ladder[0])
    err = float("inf")
    for m in ladder[1:]:
        cur = apply(m)
        diff = np.abs(np.asarray(cur) - np.asarray(prev))
        scale = np.abs(np.asarray(cur))
        err = float(np.max(diff)) if np.size(diff) else 0.0
        if np.all(diff <= rtol * scale) or np.all(diff == 0):
            return QuadResult(cur, err, m, True)
        prev = cur
    warnings.warn(
        f"quadrature did not reach rtol={rtol:g} with {ladder[-1]} nodes (last change {err:.3g})",
        QuadratureWarning,
        stacklevel=2,
    )
    return QuadResult(prev, err, ladder[-1], False)


# ---------------------------------------------------------------------------
# product integration on a mesh


@dataclass(frozen=True)
class GradedMesh:
    """Nodes ``T (j/N)^r`` on [0, T], optionally continued geometrically.

    The extension appends ``count`` nodes with a constant ratio no larger
    than ``ratio`` ending exactly at ``T_max``.
    """

    T: float
    N: int
    r: float
    ratio: float | None = None
    T_max: float | None = None

    def __post_init__(self):
        if not self.T > 0 or self.N < 1 or self.r < 1:
            raise ValueError(f"invalid graded mesh parameters T={self.T}, N={self.N}, r={self.r}")
        if self.T_max is not None:
            if self.ratio is None or not self.ratio > 1:
                raise ValueError("a geometric extension needs ratio > 1")
            if not self.T_max >= self.T:
                raise ValueError("T_max must be >= T")

    def graded_nodes(self) -> np.ndarray:
        j = np.arange(self.N + 1, dtype=float)
        t = self.T * (j / self.N) ** self.r
        t[-1] = self.T
        return t

    def nodes(self) -> np.ndarray:
        t = self.graded_nodes()
        if self.T_max is None or self.T_max == self.T:
            return t
        return np.concatenate([t, geometric_nodes(self.T, self.T_max, self.ratio)])


def geometric_nodes(start: float, stop: float, ratio: float) -> np.ndarray:
    """Nodes after ``start`` up to ``stop`` with a common ratio <= ``ratio``."""
    count = max(1, math.ceil(math.log(stop / start) / math.log(ratio) - 1e-9))
    q = (stop / start) ** (1.0 / count)
    out = start * q ** np.arange(1, count + 1, dtype=float)
    out[-1] = stop
    return out


def kernel_rule(p: float, q: float, t: float, beta: float, delta: float, n: int = 16):
    """Nodes and weights for ``int_p^q (t-s)^(beta-1) s^(-delta) h(s) ds``, ``0 <= p < q <= t``.

    The panel is bisected until each piece is at least half its length away
    from whichever singular point (0 or t) it does not touch; a piece that
    touches one carries that factor in its Jacobi weight.
    """
    nodes: list[np.ndarray] = []
    weights: list[np.ndarray] = []
    stack = [(p, q)]
    while stack:
        lo, hi = stack.pop()
        length = hi - lo
        at_zero = lo == 0.0
        at_t = hi == t
        near_zero = not at_zero and lo < 0.5 * length
        near_t = not at_t and (t - hi) < 0.5 * length
        if near_zero or near_t or (at_zero and at_t):
            mid = 0.5 * (lo + hi)
            stack.append((lo, mid))
            stack.append((mid, hi))
            continue
        if at_zero:
            r = jacobi_rule(n, 0.0, -delta)
            s = length * r.nodes
            w = length ** (1.0 - delta) * r.weights * (t - s) ** (beta - 1.0)
        elif at_t:
            r = jacobi_rule(n, beta - 1.0, 0.0)
            s = lo + length * r.nodes
            w = length**beta * r.weights * s ** (-delta)
        else:
            r = jacobi_rule(n, 0.0, 0.0)
            s = lo + length * r.nodes
            w = length * r.weights * (t - s) ** (beta - 1.0) * s ** (-delta)
        nodes.append(s)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def history_row(t: np.ndarray, j: int, beta: float, delta: float, n: int) -> np.ndarray:
    """Weights of g_1..g_j in int_0^{t_j} (t_j-s)^(beta-1) s^(-delta) g(s) ds."""
    row = np.zeros(j + 1)
    tj = t[j]
    # first panel: g taken constant (= g_1), since g(0) is only a limit
    s, w = kernel_rule(0.0, t[1], tj, beta, delta, n)
    row[1] += w.sum()
    if j == 1:
        return row
    lo, hi = t[1:j], t[2 : j + 1]
    h = hi - lo
    # regular panels are batched; panels close to s = 0 (relative to their length)
    # or touching t_j go through kernel_rule
    irregular = (lo < 0.5 * h) | (hi == tj) | ((tj - hi) < 0.5 * h)
    idx = np.nonzero(~irregular)[0]
    if idx.size:
        g = jacobi_rule(n, 0.0, 0.0)
        ll, hh = lo[idx][:, None], h[idx][:, None]
        s = ll + hh * g.nodes[None, :]
        ker = hh * g.weights[None, :] * (tj - s) ** (beta - 1.0) * s ** (-delta)
        right = (ker * g.nodes[None, :]).sum(axis=1)
        left = ker.sum(axis=1) - right
        np.add.at(row, idx + 1, left)
        np.add.at(row, idx + 2, right)
    for i in np.nonzero(irregular)[0]:
        a_, b_ = lo[i], hi[i]
        s, w = kernel_rule(a_, b_, tj, beta, delta, n)
        frac = (s - a_) / (b_ - a_)
        row[i + 2] += np.dot(w, frac)
        row[i + 1] += np.dot(w, 1.0 - frac)
    return row


@lru_cache(maxsize=32)
def _history_cached(key: bytes, size: int, beta: float, delta: float, n: int) -> np.ndarray:
    t = np.frombuffer(key, dtype=float, count=size)
    m = t.size
    mat = np.zeros((m, m))
    for j in range(1, m):
        mat[j, : j + 1] = history_row(t, j, beta, delta, n)
    mat.setflags(write=False)
    return mat


def history_weights(t, beta: float, delta: float, n: int = 16) -> np.ndarray:
    """Lower-triangular product-integration matrix ``W`` on the mesh ``t`` (``t[0] = 0``).

    ``(W @ g)[j]`` approximates ``int_0^{t_j} (t_j - s)^(beta-1) s^(-delta) g(s) ds``
    with ``g`` piecewise linear through the node values (constant ``g_1`` on
    the first panel). Column 0 is always zero.
    """
    t = np.ascontiguousarray(t, dtype=float)
    if t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise ValueError("mesh must start at 0 and increase strictly")
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    if not delta < 1.0:
        raise DomainError(f"singularity exponent {delta} is not integrable")
    return _history_cached(t.tobytes(), t.size, float(beta), float(delta), int(n))

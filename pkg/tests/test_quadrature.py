from __future__ import annotations

import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlfde.quadrature import (
    GradedMesh,
    QuadratureWarning,
    geometric_nodes,
    graded_rule,
    history_weights,
    integrate_singular,
    jacobi_rule,
    kernel_rule,
)
from rlfde.special import DomainError, beta_fn

exponents = st.floats(min_value=-0.95, max_value=2.0)


def moment(a, b, k):
    # independent of the package: mpmath's Beta
    return float(mp.beta(a + 1, b + k + 1))


def test_midpoint_rule():
    r = jacobi_rule(1, 0.0, 0.0)
    assert r.nodes.tolist() == [0.5] and r.weights.tolist() == [1.0]


def test_v_squared_moment():
    r = jacobi_rule(8, -0.5, 0.0)
    exact = beta_fn(0.5, 3.0)  # int (1-v)^(-1/2) v^2 dv
    assert abs(r(r.nodes**2) - exact) <= 1e-14 * exact
    assert exact == pytest.approx(16.0 / 15.0, rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), exponents, exponents)
def test_rule_invariants(n, a, b):
    r = jacobi_rule(n, a, b)
    assert r.nodes.shape == r.weights.shape == (n,)
    assert np.all((r.nodes > 0) & (r.nodes < 1))
    assert np.all(np.diff(r.nodes) > 0)
    assert np.all(r.weights > 0)
    assert abs(r.weights.sum() - beta_fn(a + 1, b + 1)) <= 1e-13 * beta_fn(a + 1, b + 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 24), exponents, exponents, st.data())
def test_polynomial_exactness(n, a, b, data):
    deg = data.draw(st.integers(0, 2 * n - 1))
    c = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=deg + 1, max_size=deg + 1)))
    r = jacobi_rule(n, a, b)
    got = r(np.polynomial.polynomial.polyval(r.nodes, c))
    moments = np.array([moment(a, b, k) for k in range(deg + 1)])
    exact = float(c @ moments)
    assert abs(got - exact) <= 1e-11 * max(float(np.abs(c) @ moments), 1e-300)


@pytest.mark.parametrize("a, b", [(-1.0, 0.0), (0.0, -1.5)])
def test_rule_domain(a, b):
    with pytest.raises(DomainError):
        jacobi_rule(4, a, b)


def test_rule_rejects_empty():
    with pytest.raises(ValueError):
        jacobi_rule(0, 0.0, 0.0)


@pytest.mark.parametrize("beta", [0.2, 0.5, 0.8])
def test_integrate_constant(beta):
    res = integrate_singular(lambda v: np.ones_like(v), beta - 1.0, 0.0)
    assert res.converged and res.value == pytest.approx(1.0 / beta, rel=1e-13)


def test_integrate_arcsine_weight():
    res = integrate_singular(lambda v: 1.0, -0.5, -0.5)
    assert res.value == pytest.approx(math.pi, rel=1e-14)


def test_integrate_eq_closed_form():
    res = integrate_singular(lambda v: 1.0 / (1.0 + v), -0.5, 0.0)
    assert res.converged
    assert res.value == pytest.approx(math.sqrt(2) * math.log(1 + math.sqrt(2)), rel=1e-12)


def test_integrate_batched_rows():
    c = np.array([1.0, 2.0, 3.0])
    res = integrate_singular(lambda v: c[:, None] * np.exp(v)[None, :], -0.3, 0.4)
    assert res.value.shape == (3,)
    assert np.allclose(res.value / res.value[0], c, rtol=1e-14)


@given(st.floats(min_value=-1e3, max_value=1e3).filter(lambda c: abs(c) > 1e-6))
def test_integrate_scales_with_constant(c):
    base = integrate_singular(lambda v: np.cos(3 * v), -0.4, -0.2).value
    scaled = integrate_singular(lambda v: c * np.cos(3 * v), -0.4, -0.2).value
    assert scaled == pytest.approx(c * base, rel=1e-12)


def test_nonconvergence_is_flagged_not_raised():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = integrate_singular(lambda v: np.sin(400 * v), 0.0, 0.0, n_max=32)
    assert not res.converged and res.n == 32
    assert any(issubclass(w.category, QuadratureWarning) for w in caught)


def test_fixed_n_single_rule():
    res = integrate_singular(lambda v: v**3, 0.0, 0.0, n=2)
    assert res.value == pytest.approx(0.25, rel=1e-15) and res.n == 2


@pytest.mark.parametrize("a, b", [(-0.5, -0.7), (0.0, -0.3), (-0.9, 0.0)])
def test_graded_rule_weight_sum(a, b):
    v, w = graded_rule(16, a, b, (40, 8))
    assert np.all(np.diff(v) > 0)
    assert w.sum() == pytest.approx(beta_fn(a + 1, b + 1), rel=1e-13)


def test_graded_rule_resolves_scaled_integrand():
    # sigma(t v) for large t varies on a 1/t scale near v = 0
    t = 1e6
    v, w = graded_rule(16, -0.5, 0.0, (30, 6))
    got = math.sqrt(t) * np.dot(w, 1.0 / (1.0 + t * v))
    exact = 2.0 / math.sqrt(1 + t) * math.log(math.sqrt(1 + t) + math.sqrt(t))
    assert got == pytest.approx(exact, rel=1e-10)


def test_graded_mesh_nodes():
    m = GradedMesh(10.0, 4, 2.0)
    assert m.nodes().tolist() == pytest.approx([0.0, 0.625, 2.5, 5.625, 10.0])
    ext = GradedMesh(10.0, 4, 2.0, ratio=1.25, T_max=1e3)
    t = ext.nodes()
    assert t[-1] == 1e3 and np.all(np.diff(t) > 0)
    assert np.all(t[5:] / t[4:-1] <= 1.25 * (1 + 1e-12))


@pytest.mark.parametrize("kwargs", [dict(T=0.0, N=4, r=2.0), dict(T=1.0, N=0, r=2.0), dict(T=1.0, N=4, r=2.0, T_max=5.0)])
def test_graded_mesh_rejects(kwargs):
    with pytest.raises(ValueError):
        GradedMesh(**kwargs)


@given(st.floats(0.1, 100.0), st.floats(1.01, 1e4), st.floats(1.05, 3.0))
def test_geometric_nodes(start, factor, ratio):
    t = geometric_nodes(start, start * factor, ratio)
    assert t[-1] == start * factor
    q = np.diff(np.log(np.concatenate([[start], t])))
    assert np.all(q <= math.log(ratio) + 1e-9)
    assert np.ptp(q) <= 1e-9


@pytest.mark.parametrize("beta, delta", [(0.5, 0.0), (0.3, 0.6), (0.7, 0.25)])
@pytest.mark.parametrize("p, q, t", [(0.0, 1.0, 1.0), (0.0, 0.3, 2.0), (0.4, 1.3, 1.3), (0.2, 0.5, 4.0)])
def test_kernel_rule_moments(beta, delta, p, q, t):
    s, w = kernel_rule(p, q, t, beta, delta)
    for k in range(3):
        with mp.workdps(40):
            exact = float(mp.quad(lambda u: (t - u) ** (beta - 1) * u ** (k - delta), [p, (p + q) / 2, q]))
        assert np.dot(w, s**k) == pytest.approx(exact, rel=1e-12)


@pytest.mark.parametrize("beta, delta", [(0.5, 0.0), (0.3, 0.6), (0.8, 0.5)])
def test_history_weights_exact_for_constants(beta, delta):
    t = GradedMesh(10.0, 40, 2.0, ratio=1.25, T_max=1e3).nodes()
    W = history_weights(t, beta, delta)
    got = W @ np.ones_like(t)
    exact = beta_fn(beta, 1.0 - delta) * t[1:] ** (beta - delta)
    assert got[0] == 0.0
    assert np.allclose(got[1:], exact, rtol=1e-12, atol=0)


def test_history_weights_linear_beyond_first_panel():
    beta = 0.5
    t = GradedMesh(4.0, 64, 4.0).nodes()
    W = history_weights(t, beta, 0.0)
    got = W @ t
    tt = t[2:]
    exact = beta_fn(beta, 2.0) * tt ** (beta + 1.0)
    # only the first panel, where g is held at g_1, deviates
    first = 2.0 * t[1] ** 2 * (tt - t[1]) ** (beta - 1.0)
    assert np.all(np.abs(got[2:] - exact) <= first + 1e-13 * exact)


def test_history_weights_lower_triangular_and_cached():
    t = GradedMesh(1.0, 16, 2.0).nodes()
    W = history_weights(t, 0.5, 0.0)
    assert np.all(np.triu(W, 1) == 0) and np.all(W[:, 0] == 0)
    assert history_weights(t.copy(), 0.5, 0.0) is W


@pytest.mark.parametrize("t", [np.array([0.1, 1.0]), np.array([0.0, 1.0, 1.0])])
def test_history_weights_rejects_bad_mesh(t):
    with pytest.raises(ValueError):
        history_weights(t, 0.5, 0.0)

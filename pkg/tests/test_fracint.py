from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlfde.fracint import (
    PropertyVerdict,
    SingularFunction,
    aitken,
    check_monotone,
    check_weak_singular_bound,
    check_weighted_continuity,
    find_turning_point,
    frac_integral,
    power_law,
    tail_limit,
    turning_point_g,
)
from rlfde.special import DomainError, beta_fn, resolvent_constant
from rlfde.suites import random_monotone_family

# frozen oracle values (tests/oracles.py and mpmath)
REMARK_CLOSED_FORM = 2.587109559229790534953515  # Gamma(1/2) Gamma(2/3) / Gamma(7/6)
SQRT2_LOG = 1.24645048028046102678804  # sqrt(2) ln(1 + sqrt(2))
T0_ORACLE = 2.276717531228072597311984


def closed_form_26(t):
    t = np.asarray(t, dtype=float)
    return 2.0 / np.sqrt(1 + t) * np.log(np.sqrt(1 + t) + np.sqrt(t))


def sf(src, alpha=0.0):
    return SingularFunction.parse(src, alpha)


def test_singular_function_parts():
    rho = sf("s^(-1/3)*(1+s)", 1 / 3)
    s = np.array([0.5, 2.0])
    assert np.allclose(rho.sigma(s), 1 + s, rtol=1e-15)
    assert np.allclose(rho.weighted(s, 0.5), s**0.5 * rho(s), rtol=0)
    assert sf("0").is_zero() and not rho.is_zero()


@pytest.mark.parametrize("alpha", [-0.1, 1.0])
def test_singular_function_rejects_alpha(alpha):
    with pytest.raises(DomainError):
        sf("1", alpha)


def test_failed_verdict_needs_witness():
    with pytest.raises(ValueError):
        PropertyVerdict("x", False)
    assert PropertyVerdict("x", False, skipped=True).status == "skip"


def test_remark_closed_form():
    assert frac_integral(sf("s^(-1/3)", 1 / 3), 0.5, 1.0) == pytest.approx(REMARK_CLOSED_FORM, rel=1e-12)


def test_reciprocal_closed_form_at_one():
    assert frac_integral(sf("1/(1+s)"), 0.5, 1.0) == pytest.approx(SQRT2_LOG, rel=1e-12)


@pytest.mark.parametrize("t", [1e-4, 0.1, 1.0, 10.0, 100.0, 1e4, 1e8])
def test_reciprocal_closed_form_range(t):
    assert frac_integral(sf("1/(1+s)"), 0.5, t) == pytest.approx(float(closed_form_26(t)), rel=1e-10)


@pytest.mark.parametrize("beta", [0.1, 0.2, 0.5, 0.8, 0.95])
def test_resolvent_identity(beta):
    t = np.array([1e-3, 0.5, 5.0, 500.0, 1e6])
    y = frac_integral(sf(f"s^(-{beta!r})", beta), beta, t)
    assert np.allclose(y, resolvent_constant(beta), rtol=1e-11, atol=0)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 0.9), st.floats(0.1, 0.9), st.floats(1e-3, 1e3))
def test_homogeneity(alpha, beta, t):
    y = frac_integral(sf(f"s^(-{alpha!r})", alpha), beta, t)
    assert y == pytest.approx(beta_fn(beta, 1 - alpha) * t ** (beta - alpha), rel=1e-9)
    assert y == pytest.approx(float(power_law(alpha, beta, t)), rel=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 0.8), st.floats(0.05, 50.0), st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(beta, t, c1, c2):
    r1, r2 = sf("exp(-s)"), sf("1/(1+s^2)")
    both = sf(f"{c1!r}*exp(-s) + {c2!r}/(1+s^2)")
    lhs = frac_integral(both, beta, t)
    rhs = c1 * frac_integral(r1, beta, t) + c2 * frac_integral(r2, beta, t)
    scale = abs(c1) * frac_integral(r1, beta, t) + abs(c2) * frac_integral(r2, beta, t)
    assert abs(lhs - rhs) <= 1e-10 * max(scale, 1e-300)


def test_zero_density():
    assert frac_integral(sf("0"), 0.5, 3.0) == 0.0
    assert np.all(frac_integral(sf("0"), 0.5, np.array([1.0, 2.0])) == 0.0)


@pytest.mark.parametrize("beta, t", [(0.0, 1.0), (1.0, 1.0), (0.5, 0.0), (0.5, -1.0)])
def test_frac_integral_domain(beta, t):
    with pytest.raises(DomainError):
        frac_integral(sf("1"), beta, t)


def test_full_output_reports_error():
    res = frac_integral(sf("exp(-s)"), 0.5, 2.0, full_output=True)
    assert res.converged and res.error <= 1e-9 * abs(res.value)


def test_monotone_remark_increasing():
    v = check_monotone(sf("s^(-1/3)", 1 / 3), 0.5, direction="nondecreasing")
    assert v.passed and not v.note


@pytest.mark.parametrize("direction", ["nonincreasing", "nondecreasing"])
def test_monotone_constant_case(direction):
    v = check_monotone(sf("s^(-0.5)", 0.5), 0.5, direction=direction)
    assert v.passed and not v.note


def test_monotone_reciprocal_on_unit_interval():
    v = check_monotone(sf("1/(1+s)"), 0.5, grid=np.linspace(0.01, 1.0, 50), direction="nondecreasing")
    assert v.passed and not v.note


def test_monotone_vacuous_when_hypothesis_fails():
    v = check_monotone(sf("1/(1+s)"), 0.5, grid=np.logspace(-2, 2, 50), direction="nondecreasing")
    assert v.passed and "vacuous" in v.note and "hypothesis" in v.witness


def test_monotone_rejects_bad_grid():
    with pytest.raises(ValueError):
        check_monotone(sf("1"), 0.5, grid=[2.0, 1.0])


@pytest.mark.parametrize("direction", ["nonincreasing", "nondecreasing"])
def test_monotone_random_families(direction):
    rng = np.random.default_rng(1234)
    for _ in range(10):
        beta = float(rng.uniform(0.2, 0.8))
        v = check_monotone(random_monotone_family(rng, beta, direction), beta, direction=direction)
        assert v.passed and not v.note


def test_sandwich_bounds():
    rho = sf("1/(1+sqrt(s))")
    t = np.array([1.0, 10.0, 100.0, 1000.0])
    y = frac_integral(rho, 0.5, t)
    assert np.all(y <= math.pi)
    assert np.all(y >= math.pi - beta_fn(0.5, 1 / 3) * t ** (-1 / 6))


def test_tail_limit_pi():
    est, v = tail_limit(sf("1/(1+sqrt(s))"), 0.5)
    assert v.passed and abs(est - math.pi) <= 1e-3
    assert v.witness["predicted"] == pytest.approx(math.pi, rel=1e-6)


def test_tail_limit_zero():
    est, v = tail_limit(sf("1/(1+s)"), 0.5)
    assert v.passed and abs(est) <= 1e-3


@pytest.mark.parametrize("beta", [0.3, 0.6])
def test_tail_limit_exact_power(beta):
    est, v = tail_limit(sf(f"s^(-{beta!r})", beta), beta)
    assert v.passed and est == pytest.approx(resolvent_constant(beta), rel=1e-9)


def test_tail_limit_rejects_bad_ladder():
    with pytest.raises(ValueError):
        tail_limit(sf("1"), 0.5, t_ladder=[1.0, 1.5, 2.25, 3.4, 5.1, 7.6])


def test_aitken_exact_on_geometric_sequences():
    L, c, q = 2.5, -1.3, 0.7
    x = L + c * q ** np.arange(8)
    assert np.allclose(aitken(x), L, rtol=1e-13)
    with pytest.raises(ValueError):
        aitken([1.0, 2.0])


def test_turning_point():
    assert turning_point_g(1.0) == pytest.approx(math.sqrt(2) / 2 * math.log(1 + math.sqrt(2)), rel=1e-15)
    assert turning_point_g(1.0) < 1.0
    T0 = find_turning_point()
    assert 2.0 < T0 < 3.0
    assert abs(turning_point_g(T0) - 1.0) <= 1e-10
    assert T0 == pytest.approx(T0_ORACLE, rel=1e-11)


def test_turning_point_shape():
    T0 = find_turning_point()
    t = np.linspace(0.05, 20.0, 100)
    y = frac_integral(sf("1/(1+s)"), 0.5, t)
    d = np.diff(y)
    assert np.all(d[t[1:] < T0] > 0) and np.all(d[t[:-1] > T0] < 0)


def test_weak_bound_example():
    v = check_weak_singular_bound(sf("s^(-1/3)", 1 / 3), 0.5, 3.0, 1.0)
    assert v.passed and v.witness["lhs"] <= v.witness["rhs"]


def test_weak_bound_zero():
    v = check_weak_singular_bound(sf("0"), 0.5, 3.0, 1.0)
    assert v.passed and v.witness["lhs"] == 0.0 and v.witness["rhs"] == 0.0


@given(st.floats(0.1, 20.0))
@settings(max_examples=20, deadline=None)
def test_weak_bound_homogeneous(c):
    base = check_weak_singular_bound(sf("s^(-0.5)", 0.5), 0.5, 3.0, 0.5).witness
    v = check_weak_singular_bound(sf(f"{c!r}*s^(-0.5)", 0.5), 0.5, 3.0, 0.5)
    assert v.passed
    assert v.witness["lhs"] == pytest.approx(c * base["lhs"], rel=1e-10)
    assert v.witness["rhs"] == pytest.approx(c * base["rhs"], rel=1e-10)


def test_weak_bound_flags_non_integrable():
    v = check_weak_singular_bound(sf("s^(-0.9)", 0.9), 0.5, 4.0, 1.0)
    assert not v.passed and "integrable" in v.note


def test_weak_bound_requires_p_beta_gt_one():
    with pytest.raises(DomainError):
        check_weak_singular_bound(sf("1"), 0.5, 1.5, 1.0)


@pytest.mark.parametrize(
    "src, alpha, beta",
    [("s^(-1/3)", 1 / 3, 0.5), ("1", 0.0, 0.5), ("s^(-0.5)", 0.5, 0.5), ("s^(-0.7)", 0.7, 0.7), ("1/(1+s)", 0.0, 0.3)],
)
def test_weighted_continuity(src, alpha, beta):
    v = check_weighted_continuity(sf(src, alpha), beta)
    assert v.passed
    # for these densities t^(1-beta) y(t) -> 0 like a positive power of t
    assert abs(v.witness["values"][-1]) < abs(v.witness["values"][-2])


def test_weighted_continuity_one():
    # t^(1-beta) y = t / beta
    v = check_weighted_continuity(sf("1"), 0.5, depth=20)
    assert v.witness["values"][-1] == pytest.approx(2.0 ** -20 / 0.5, rel=1e-12)

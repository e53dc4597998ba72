"""Weighted Cauchy problems for Riemann-Liouville fractional differential equations.

Modules: :mod:`special` (Gamma/Beta), :mod:`expr` (expression language),
:mod:`quadrature` (Gauss-Jacobi rules, product integration),
:mod:`fracint` (fractional integrals and their property checks),
:mod:`solver` (Volterra fixed point), :mod:`asymptote` (limit prediction),
:mod:`cli`.
"""

from .asymptote import AsymptoteReport, classify, extrapolate_limit, solve_limit_equation
from .expr import Expression, parse, tokenize
from .fracint import PropertyVerdict, SingularFunction, frac_integral
from .solver import ProblemSpec, SolverConfig, WeightedTrajectory, solve, solve_picard
from .special import beta_fn, gamma, resolvent_constant

__all__ = [
    "AsymptoteReport",
    "Expression",
    "ProblemSpec",
    "PropertyVerdict",
    "SingularFunction",
    "SolverConfig",
    "WeightedTrajectory",
    "beta_fn",
    "classify",
    "extrapolate_limit",
    "frac_integral",
    "gamma",
    "parse",
    "resolvent_constant",
    "solve",
    "solve_limit_equation",
    "solve_picard",
    "tokenize",
]

__version__ = "0.1.0"

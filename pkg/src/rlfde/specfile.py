"""JSON problem-spec files.

A spec file looks like::

    {
      "beta": 0.5,
      "x0": 1.0,
      "rhs": {"kind": "structured", "l": "t^(-1/2)", "phi": "cbrt(x)", "k": "0",
              "mu": 0.3333333333333333, "alpha_l": 0.5, "alpha_k": 0.0},
      "solver": {"T0": 10.0, "Tmax": 1000000.0, "N": 256, "grading": 4.0,
                 "ratio": 1.25, "tol": 1e-10}
    }

A general right-hand side uses ``"kind": "general"`` and ``"f"`` (variables
``t`` and ``x``) instead of ``l``, ``phi``, ``k``. Either kind may carry
``"envelopes": {"l", "k", "l1", "k1", "gamma"}``. Unknown keys are errors.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .expr import ExprError, Expression
from .fracint import SingularFunction
from .solver import Envelopes, General, ProblemSpec, SolverConfig, Structured
from .special import DomainError

__all__ = ["SpecError", "parse_spec", "load_spec", "spec_to_dict", "dump_spec", "example_path", "EXAMPLE_IDS"]

EXAMPLE_IDS = ("4.1", "4.2", "4.3", "4.4", "4.5", "4.6")

TOP_KEYS = ("name", "beta", "x0", "rhs", "solver")
STRUCTURED_KEYS = ("kind", "l", "phi", "k", "mu", "alpha_l", "alpha_k", "envelopes")
GENERAL_KEYS = ("kind", "f", "mu", "alpha_l", "alpha_k", "envelopes")
ENVELOPE_KEYS = ("l", "k", "l1", "k1", "gamma")
SOLVER_KEYS = ("T0", "Tmax", "N", "grading", "ratio", "tol", "max_iter")


class SpecError(ValueError):
    pass


def _check_keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise SpecError(f"{where}: expected an object")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise SpecError(f"{where}: unknown key(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SpecError(f"{where}: missing key(s) {', '.join(missing)}")


def _number(obj, key, where, default=None):
    if key not in obj:
        if default is None:
            raise SpecError(f"{where}: missing {key}")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SpecError(f"{where}.{key}: expected a number, got {v!r}")
    return float(v)


def _expr(obj, key, variables, where) -> Expression:
    src = obj.get(key)
    if not isinstance(src, str):
        raise SpecError(f"{where}.{key}: expected an expression string")
    try:
        return Expression.parse(src, variables)
    except ExprError as exc:
        raise SpecError(f"{where}.{key}: {exc}") from exc


def _envelopes(obj, where) -> Envelopes | None:
    if obj is None:
        return None
    _check_keys(obj, ENVELOPE_KEYS, ("l", "k", "l1", "k1"), where)
    gam = obj.get("gamma")
    if gam is not None:
        gam = _number(obj, "gamma", where)
    return Envelopes(*(_expr(obj, k, ["t"], where) for k in ("l", "k", "l1", "k1")), gam)


def parse_spec(data: dict) -> ProblemSpec:
    """Validate a decoded spec document and build the problem."""
    _check_keys(data, TOP_KEYS, ("beta", "x0", "rhs"), "spec")
    beta = _number(data, "beta", "spec")
    x0 = _number(data, "x0", "spec")
    rhs = data["rhs"]
    if not isinstance(rhs, dict) or rhs.get("kind") not in ("structured", "general"):
        raise SpecError('rhs.kind must be "structured" or "general"')
    try:
        if rhs["kind"] == "structured":
            _check_keys(rhs, STRUCTURED_KEYS, ("kind", "l", "phi", "k", "mu"), "rhs")
            alpha_l = _number(rhs, "alpha_l", "rhs", 0.0)
            alpha_k = _number(rhs, "alpha_k", "rhs", 0.0)
            r = Structured(
                SingularFunction(_expr(rhs, "l", ["t"], "rhs"), alpha_l),
                _expr(rhs, "phi", ["x"], "rhs"),
                SingularFunction(_expr(rhs, "k", ["t"], "rhs"), alpha_k),
                _number(rhs, "mu", "rhs"),
                _envelopes(rhs.get("envelopes"), "rhs.envelopes"),
            )
        else:
            _check_keys(rhs, GENERAL_KEYS, ("kind", "f"), "rhs")
            r = General(
                _expr(rhs, "f", ["t", "x"], "rhs"),
                _number(rhs, "mu", "rhs", 0.0),
                _number(rhs, "alpha_l", "rhs", 0.0),
                _number(rhs, "alpha_k", "rhs", 0.0),
                _envelopes(rhs.get("envelopes"), "rhs.envelopes"),
            )
        solver = data.get("solver", {})
        _check_keys(solver, SOLVER_KEYS, (), "solver")
        defaults = SolverConfig()
        grading = solver.get("grading")
        cfg = SolverConfig(
            T0=_number(solver, "T0", "solver", defaults.T0),
            Tmax=_number(solver, "Tmax", "solver", defaults.Tmax),
            N=int(_number(solver, "N", "solver", defaults.N)),
            grading=None if grading is None else _number(solver, "grading", "solver"),
            ratio=_number(solver, "ratio", "solver", defaults.ratio),
            tol=_number(solver, "tol", "solver", defaults.tol),
            max_iter=int(_number(solver, "max_iter", "solver", defaults.max_iter)),
        )
        name = data.get("name", "")
        if not isinstance(name, str):
            raise SpecError("spec.name: expected a string")
        return ProblemSpec(beta, x0, r, cfg, name)
    except (DomainError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc)) from exc


def load_spec(path) -> ProblemSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from exc
    return parse_spec(data)


def _env_dict(e: Envelopes) -> dict:
    out = {"l": e.l.source, "k": e.k.source, "l1": e.l1.source, "k1": e.k1.source}
    if e.gamma is not None:
        out["gamma"] = e.gamma
    return out


def spec_to_dict(spec: ProblemSpec) -> dict:
    """Canonical document: fixed key order, every solver setting written out."""
    r = spec.rhs
    if isinstance(r, Structured):
        rhs = {
            "kind": "structured",
            "l": r.l.source,
            "phi": r.phi.source,
            "k": r.k.source,
            "mu": r.mu,
            "alpha_l": r.l.alpha,
            "alpha_k": r.k.alpha,
        }
    else:
        rhs = {"kind": "general", "f": r.f.source, "mu": r.mu, "alpha_l": r.alpha_l, "alpha_k": r.alpha_k}
    if r.envelopes is not None:
        rhs["envelopes"] = _env_dict(r.envelopes)
    c = spec.solver
    solver = {"T0": c.T0, "Tmax": c.Tmax, "N": c.N, "grading": c.grading, "ratio": c.ratio, "tol": c.tol, "max_iter": c.max_iter}
    out = {}
    if spec.name:
        out["name"] = spec.name
    out.update({"beta": spec.beta, "x0": spec.x0, "rhs": rhs, "solver": solver})
    return out


def dump_spec(spec: ProblemSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2) + "\n"


def example_path(example_id: str):
    """Path of a shipped example spec, e.g. ``example_path("4.1")``."""
    if example_id not in EXAMPLE_IDS:
        raise KeyError(f"unknown example {example_id!r}; choose from {', '.join(EXAMPLE_IDS)}")
    return resources.files("rlfde") / "data" / f"ex{example_id.replace('.', '_')}.json"

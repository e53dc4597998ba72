from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlfde.expr import (
    FUNCTIONS,
    Binary,
    Call,
    Const,
    EvalError,
    Expression,
    LexError,
    Neg,
    ParseError,
    UnboundVariableError,
    UnknownIdentifierError,
    Var,
    evaluate,
    parse,
    to_source,
    tokenize,
    variables_of,
)


def kinds(source):
    return [(t.kind, t.lexeme) for t in tokenize(source)]


def test_tokenize_signed_exponent():
    assert kinds("t^(-1/2)") == [
        ("identifier", "t"),
        ("operator", "^"),
        ("paren", "("),
        ("operator", "-"),
        ("number", "1"),
        ("operator", "/"),
        ("number", "2"),
        ("paren", ")"),
    ]


def test_tokenize_empty():
    assert tokenize("") == []
    assert tokenize("   ") == []


@pytest.mark.parametrize("source, offset", [("2..5", 1), ("1.", 1), ("x $ 2", 2), ("3e", 1), ("2x", 1)])
def test_lex_error_offsets(source, offset):
    with pytest.raises(LexError) as info:
        tokenize(source)
    assert info.value.position == offset


@pytest.mark.parametrize("source", ["1e-05", "2.5E+3", ".5", "0.75", "1234"])
def test_number_forms(source):
    (tok,) = tokenize(source)
    assert tok.kind == "number" and float(tok.lexeme) == float(source)


def test_positions_are_byte_offsets():
    toks = tokenize("x + ln(t)")
    assert [t.position for t in toks] == [0, 2, 4, 6, 7, 8]


def test_parse_rational_function():
    ast = parse("(x+1)/(x+2)", {"x"})
    assert ast == Binary("/", Binary("+", Var("x"), Const(1.0)), Binary("+", Var("x"), Const(2.0)))


def test_parse_pi_call():
    ast = parse("sqrt(pi)*x", {"x"})
    assert ast == Binary("*", Call("sqrt", (Var("pi"),)), Var("x"))
    assert variables_of(ast) == {"x"}


def test_unparenthesised_signed_exponent_rejected():
    with pytest.raises(ParseError):
        parse("t^-1/2", {"t"})


def test_power_right_associative_and_above_unary():
    assert evaluate(parse("2^3^2", set()), {}) == 2.0**9
    assert evaluate(parse("-2^2", set()), {}) == -4.0
    assert evaluate(parse("2*3^2", set()), {}) == 18.0


@pytest.mark.parametrize("source", ["y+1", "foo(x)", "x*e"])
def test_unknown_identifier(source):
    with pytest.raises(UnknownIdentifierError):
        parse(source, {"x"})


@pytest.mark.parametrize("source", ["(x+1", "x+", "sqrt(x", "sqrt()", "pow(x)", "x)", "*x", "x x", "sqrt(x, x)", "()"])
def test_syntax_errors_positioned(source):
    with pytest.raises(ParseError) as info:
        parse(source, {"x"})
    assert 0 <= info.value.position <= len(source.encode())


@pytest.mark.parametrize(
    "source, bindings, expected",
    [
        ("t^(-1/2)", {"t": 4.0}, 0.5),
        ("cbrt(x)", {"x": -8.0}, -2.0),
        ("(t^(-3/4)+t^(-1/2))*(x+1)/(x+2)", {"t": 1.0, "x": 0.0}, 1.0),
        ("ln(1+x^(1/2))", {"x": 0.0}, 0.0),
        ("pow(x, 2) + abs(-x)", {"x": 3.0}, 12.0),
        ("exp(0) + sin(0) + cos(0)", {}, 2.0),
    ],
)
def test_evaluate_examples(source, bindings, expected):
    assert evaluate(parse(source, set(bindings)), bindings) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize(
    "source, x, subexpr",
    [("ln(x)", -1.0, "ln(x)"), ("sqrt(x)", -4.0, "sqrt(x)"), ("1/x", 0.0, "(1.0 / x)"), ("x^(1/2)", -1.0, None)],
)
def test_evaluation_domain_errors(source, x, subexpr):
    with pytest.raises(EvalError) as info:
        evaluate(parse(source, {"x"}), {"x": x})
    if subexpr is not None:
        assert info.value.subexpr == subexpr


def test_eval_error_reports_array_index():
    with pytest.raises(EvalError) as info:
        evaluate(parse("sqrt(x)", {"x"}), {"x": np.array([1.0, 2.0, -3.0])})
    assert info.value.index == (2,)


def test_unbound_variable():
    with pytest.raises(UnboundVariableError):
        evaluate(parse("x+t", {"x", "t"}), {"x": 1.0})


def test_vectorised_evaluation():
    e = Expression.parse("x^2 + t", ["x", "t"])
    x = np.linspace(0, 1, 5)
    assert np.array_equal(e(x=x, t=1.0), x**2 + 1.0)
    assert isinstance(e(x=0.5, t=1.0), float)


def test_expression_constant_detection():
    assert Expression.parse("pi/2", ["t"]).is_constant()
    assert not Expression.parse("t", ["t"]).is_constant()


@given(st.floats(min_value=-1e3, max_value=1e3))
def test_precedence(t):
    assert evaluate(parse("2*t+1", {"t"}), {"t": t}) == 2 * t + 1
    assert evaluate(parse("2*(t+1)", {"t"}), {"t": t}) == 2 * (t + 1)


@given(st.text(alphabet="xt0123456789.+-*/^(), e", max_size=25))
def test_errors_stay_inside_source(source):
    try:
        tokens = tokenize(source)
    except LexError as exc:
        assert 0 <= exc.position < max(1, len(source.encode()))
        return
    for tok in tokens:
        assert source.encode()[tok.position :].startswith(tok.lexeme.encode())
    try:
        parse(source, {"x", "t"})
    except ParseError as exc:
        assert 0 <= exc.position <= len(source.encode())


# random ASTs: parse(to_source(ast)) must evaluate identically

_leaf = st.one_of(
    st.floats(min_value=-50.0, max_value=50.0, allow_nan=False).map(Const),
    st.sampled_from([Var("x"), Var("t"), Var("pi")]),
)


def _extend(children):
    unary = st.sampled_from([n for n, k in FUNCTIONS.items() if k == 1])
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda a: Binary(*a)),
        st.tuples(unary, children).map(lambda a: Call(a[0], (a[1],))),
        st.tuples(children, children).map(lambda a: Call("pow", a)),
    )


asts = st.recursive(_leaf, _extend, max_leaves=12)


def _outcome(ast, env):
    try:
        v = evaluate(ast, env)
    except EvalError:
        return "error"
    return float(v).hex()


@settings(max_examples=500, deadline=None)
@given(asts, st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=10, max_size=10))
def test_round_trip_bitwise(ast, bindings):
    back = parse(to_source(ast), {"x", "t"})
    for x, t in bindings:
        env = {"x": x, "t": t}
        assert _outcome(back, env) == _outcome(ast, env)


@given(asts)
def test_printing_is_a_fixed_point(ast):
    src = to_source(ast)
    assert to_source(parse(src, {"x", "t"})) == to_source(parse(to_source(parse(src, {"x", "t"})), {"x", "t"}))


def test_real_cube_root_is_odd():
    xs = np.linspace(-5, 5, 11)
    v = evaluate(parse("cbrt(x)", {"x"}), {"x": xs})
    assert np.allclose(v, -v[::-1], rtol=0, atol=0)
    assert math.isclose(v[0], -(5 ** (1 / 3)), rel_tol=1e-15)

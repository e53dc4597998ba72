"""A small arithmetic expression language for right-hand sides.

Grammar, loosest binding first::

    expr    := expr ('+' | '-') expr        (left assoc)
             | expr ('*' | '/') expr        (left assoc)
             | '-' expr                     (binds looser than '^')
             | atom '^' power_rhs           (right assoc)
             | atom
    atom    := NUMBER | NAME | NAME '(' expr {',' expr} ')' | '(' expr ')'

A signed exponent must be parenthesised: ``t^(-1/2)`` parses, ``t^-1/2``
does not. ``pi`` is the only named constant.

Evaluation works on floats and on numpy arrays alike; domain violations
raise :class:`EvalError` naming the offending subexpression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

__all__ = [
    "FUNCTIONS",
    "Token",
    "Const",
    "Var",
    "Neg",
    "Binary",
    "Call",
    "ExprError",
    "LexError",
    "ParseError",
    "UnknownIdentifierError",
    "EvalError",
    "UnboundVariableError",
    "Expression",
    "tokenize",
    "parse",
    "evaluate",
    "to_source",
    "variables_of",
]

# name -> arity
FUNCTIONS = {
    "sqrt": 1,
    "cbrt": 1,
    "ln": 1,
    "exp": 1,
    "abs": 1,
    "pow": 2,
    "sin": 1,
    "cos": 1,
}
CONSTANTS = {"pi": math.pi}


class ExprError(Exception):
    """Base class for expression errors."""


class LexError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class ParseError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnknownIdentifierError(ParseError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier {name!r}", position)
        self.name = name


class EvalError(ExprError):
    """Evaluation left the real domain (log/sqrt of a negative, division by zero, ...)."""

    def __init__(self, message: str, subexpr: str, index=None):
        where = "" if index is None else f" (element {index})"
        super().__init__(f"{message} in {subexpr}{where}")
        self.subexpr = subexpr
        self.index = index


class UnboundVariableError(ExprError):
    def __init__(self, name: str):
        super().__init__(f"variable {name!r} is not bound")
        self.name = name


# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    kind: str  # number | identifier | operator | paren | comma
    lexeme: str
    position: int  # byte offset into the UTF-8 source


_OPERATORS = "+-*/^"


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(source)
    # byte offset of character i
    offsets = [0]
    for ch in source:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))

    def is_digit(c: str) -> bool:
        return "0" <= c <= "9"

    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if is_digit(c) or (c == "." and i + 1 < n and is_digit(source[i + 1])):
            while i < n and is_digit(source[i]):
                i += 1
            if i < n and source[i] == ".":
                if i + 1 < n and is_digit(source[i + 1]):
                    i += 1
                    while i < n and is_digit(source[i]):
                        i += 1
                else:
                    raise LexError("malformed number", offsets[i])
            if i < n and source[i] in "eE":
                j = i + 1
                if j < n and source[j] in "+-":
                    j += 1
                if j < n and is_digit(source[j]):
                    i = j
                    while i < n and is_digit(source[i]):
                        i += 1
                else:
                    raise LexError("malformed exponent", offsets[i])
            if i < n and (source[i] == "." or source[i].isalpha() or source[i] == "_"):
                raise LexError("malformed number", offsets[i])
            tokens.append(Token("number", source[start:i], offsets[start]))
            continue
        if c.isascii() and (c.isalpha() or c == "_"):
            while i < n and source[i].isascii() and (source[i].isalnum() or source[i] == "_"):
                i += 1
            tokens.append(Token("identifier", source[start:i], offsets[start]))
            continue
        if c in _OPERATORS:
            tokens.append(Token("operator", c, offsets[i]))
        elif c in "()":
            tokens.append(Token("paren", c, offsets[i]))
        elif c == ",":
            tokens.append(Token("comma", c, offsets[i]))
        else:
            raise LexError(f"illegal character {c!r}", offsets[i])
        i += 1
    return tokens


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Node = Union[Const, Var, Neg, Binary, Call]

_INFIX_BP = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_UNARY_BP = 30


class _Parser:
    def __init__(self, source: str, variables: frozenset[str]):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0
        self.variables = variables
        self.end = len(source.encode("utf-8"))

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        self.pos += 1
        return tok

    def expect(self, lexeme: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {lexeme!r} but input ended", self.end)
        if tok.lexeme != lexeme:
            raise ParseError(f"expected {lexeme!r}, found {tok.lexeme!r}", tok.position)
        self.pos += 1
        return tok

    def parse(self) -> Node:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        node = self.expression(0)
        tok = self.peek()
        if tok is not None:
            if tok.lexeme == ")":
                raise ParseError("unbalanced ')'", tok.position)
            raise ParseError(f"unexpected token {tok.lexeme!r}", tok.position)
        return node

    def expression(self, min_bp: int) -> Node:
        left = self.prefix()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "operator":
                break
            bp = _INFIX_BP[tok.lexeme]
            if bp < min_bp or (bp == min_bp and tok.lexeme != "^"):
                break
            self.pos += 1
            if tok.lexeme == "^":
                nxt = self.peek()
                if nxt is not None and nxt.lexeme in "+-":
                    raise ParseError("signed exponent must be parenthesised", nxt.position)
                right = self.expression(bp)
            else:
                right = self.expression(bp + 1)
            left = Binary(tok.lexeme, left, right)
        return left

    def prefix(self) -> Node:
        tok = self.next()
        if tok.lexeme == "-":
            return Neg(self.expression(_UNARY_BP))
        if tok.kind == "number":
            return Const(float(tok.lexeme))
        if tok.lexeme == "(":
            node = self.expression(0)
            close = self.peek()
            if close is None:
                raise ParseError("unbalanced '(' opened here", tok.position)
            self.expect(")")
            return node
        if tok.kind == "identifier":
            return self.identifier(tok)
        raise ParseError(f"unexpected token {tok.lexeme!r}", tok.position)

    def identifier(self, tok: Token) -> Node:
        name = tok.lexeme
        nxt = self.peek()
        if name in FUNCTIONS:
            if nxt is None or nxt.lexeme != "(":
                raise ParseError(f"function {name!r} must be called", tok.position)
            self.pos += 1
            args = [self.expression(0)]
            while self.peek() is not None and self.peek().kind == "comma":
                self.pos += 1
                args.append(self.expression(0))
            if self.peek() is None:
                raise ParseError("unbalanced '(' opened here", nxt.position)
            self.expect(")")
            if len(args) != FUNCTIONS[name]:
                raise ParseError(
                    f"{name} takes {FUNCTIONS[name]} argument(s), got {len(args)}", tok.position
                )
            return Call(name, tuple(args))
        if name in CONSTANTS:
            return Var(name)
        if name in self.variables:
            if nxt is not None and nxt.lexeme == "(":
                raise ParseError(f"{name!r} is not a function", nxt.position)
            return Var(name)
        raise UnknownIdentifierError(name, tok.position)


def parse(source: str, variables: Iterable[str]) -> Node:
    """Parse ``source`` into an AST; identifiers must be in ``variables``, a function, or ``pi``."""
    return _Parser(source, frozenset(variables)).parse()


# ---------------------------------------------------------------------------
# printing


def to_source(node: Node) -> str:
    """Fully parenthesised source text; ``parse(to_source(n))`` evaluates exactly like ``n``."""
    if isinstance(node, Const):
        if node.value < 0 or (node.value == 0 and math.copysign(1.0, node.value) < 0):
            return f"(-{-node.value!r})"
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Binary):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_source(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


def variables_of(node: Node) -> set[str]:
    if isinstance(node, Var):
        return set() if node.name in CONSTANTS else {node.name}
    if isinstance(node, Neg):
        return variables_of(node.operand)
    if isinstance(node, Binary):
        return variables_of(node.left) | variables_of(node.right)
    if isinstance(node, Call):
        out: set[str] = set()
        for a in node.args:
            out |= variables_of(a)
        return out
    return set()


# ---------------------------------------------------------------------------
# evaluation


def _first_bad(mask):
    if np.ndim(mask) == 0:
        return None
    return tuple(int(i) for i in np.argwhere(mask)[0])


def _fail(message: str, node: Node, mask) -> EvalError:
    return EvalError(message, to_source(node), _first_bad(mask))


def _power(base, expo, node: Node):
    bad = (base < 0) & (expo != np.floor(expo))
    if np.any(bad):
        raise _fail("negative base with non-integer exponent", node, bad)
    zero = (base == 0) & (expo < 0)
    if np.any(zero):
        raise _fail("division by zero (zero base, negative exponent)", node, zero)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.power(base, expo)


def _eval(node: Node, env: Mapping[str, object]):
    if isinstance(node, Const):
        return np.float64(node.value)
    if isinstance(node, Var):
        if node.name in CONSTANTS and node.name not in env:
            return np.float64(CONSTANTS[node.name])
        try:
            return env[node.name]
        except KeyError:
            raise UnboundVariableError(node.name) from None
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, Binary):
        a = _eval(node.left, env)
        b = _eval(node.right, env)
        op = node.op
        if op == "+":
            out = a + b
        elif op == "-":
            out = a - b
        elif op == "*":
            out = a * b
        elif op == "/":
            zero = b == 0
            if np.any(zero):
                raise _fail("division by zero", node, zero)
            out = a / b
        else:
            out = _power(a, b, node)
    else:
        args = [_eval(a, env) for a in node.args]
        x = args[0]
        name = node.name
        if name == "sqrt":
            bad = x < 0
            if np.any(bad):
                raise _fail("sqrt of a negative number", node, bad)
            out = np.sqrt(x)
        elif name == "cbrt":
            out = np.cbrt(x)
        elif name == "ln":
            bad = x <= 0
            if np.any(bad):
                raise _fail("ln of a non-positive number", node, bad)
            out = np.log(x)
        elif name == "exp":
            with np.errstate(over="ignore"):
                out = np.exp(x)
        elif name == "abs":
            out = np.abs(x)
        elif name == "sin":
            out = np.sin(x)
        elif name == "cos":
            out = np.cos(x)
        else:
            out = _power(x, args[1], node)
    if not np.all(np.isfinite(out)):
        bad = ~np.isfinite(out)
        raise _fail("non-finite result", node, bad)
    return out


def evaluate(node: Node, bindings: Mapping[str, object]):
    """Evaluate ``node``; bindings may be floats or broadcastable numpy arrays.

    Returns a float for scalar bindings and an ndarray otherwise.
    """
    env = {k: (np.asarray(v, dtype=float) if np.ndim(v) else np.float64(v)) for k, v in bindings.items()}
    with np.errstate(divide="ignore", invalid="ignore"):
        out = _eval(node, env)
    if np.ndim(out) == 0:
        return float(out)
    return np.asarray(out, dtype=float)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Expression:
    """Parsed expression that remembers its source text and variable set."""

    source: str
    variables: tuple[str, ...]
    ast: Node

    @classmethod
    def parse(cls, source: str, variables: Iterable[str]) -> "Expression":
        variables = tuple(variables)
        return cls(source, variables, parse(source, variables))

    def __call__(self, **bindings):
        return evaluate(self.ast, bindings)

    def is_constant(self) -> bool:
        return not variables_of(self.ast)

    def __str__(self) -> str:
        return self.source

"""Expression trees over vertex coordinates and time.

An expression is an immutable tree whose internal nodes are drawn from a
fixed set of 11 arithmetic/trigonometric operators and whose leaves are
constants or the variables x, y, z, time.  Evaluating a tree at a point
yields one scalar: the displacement delta applied to all three coordinates
of a vertex.

Evaluation follows raw IEEE-754 semantics (division by zero gives ±inf or
NaN, log/sqrt of a negative gives NaN) rather than the "protected" variants
common in GP.  Non-finite results are legal values; downstream fitness code
caps them.  All arithmetic goes through numpy float64 ufuncs so that scalar
evaluation and vectorized grid evaluation are bit-identical per point.

The canonical text form is a prefix s-expression, e.g. ``(div x (add x z))``,
with constants printed as shortest round-trip decimals that always carry a
decimal point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

BINARY_OPS = ("add", "sub", "mul", "div")
UNARY_OPS = ("neg", "ceil", "floor", "sqrt", "log", "sin", "cos")
OPERATORS = BINARY_OPS + UNARY_OPS
VARIABLES = ("x", "y", "z", "time")
CONST = "const"
TERMINAL_KINDS = (CONST,) + VARIABLES

ARITY: dict[str, int] = {**{op: 2 for op in BINARY_OPS}, **{op: 1 for op in UNARY_OPS}}

_BINARY_FN = {
    "add": np.add,
    "sub": np.subtract,
    "mul": np.multiply,
    "div": np.divide,
}
_UNARY_FN = {
    "neg": np.negative,
    "ceil": np.ceil,
    "floor": np.floor,
    "sqrt": np.sqrt,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
}


class ParseError(ValueError):
    """Malformed expression text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Env:
    """One evaluation point: vertex coordinates plus the animation clock."""

    x: float
    y: float
    z: float
    time: float = 0.0

    def __post_init__(self):
        for name in ("x", "y", "z", "time"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"Env.{name} must be finite")


@dataclass(frozen=True)
class Expression:
    """Immutable expression tree node.

    ``kind`` is an operator name, a variable name, or ``"const"`` (in which
    case ``value`` holds the constant).  Genetic operators never modify trees
    in place; they build new ones, freely sharing subtrees.
    """

    kind: str
    value: float | None = None
    children: tuple[Expression, ...] = ()

    def __post_init__(self):
        if self.kind not in ARITY and self.kind not in TERMINAL_KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")
        arity = ARITY.get(self.kind, 0)
        if len(self.children) != arity:
            raise ValueError(
                f"{self.kind!r} takes {arity} children, got {len(self.children)}"
            )
        if self.kind == CONST:
            if self.value is None or not math.isfinite(self.value):
                raise ValueError("constant nodes need a finite value")
        elif self.value is not None:
            raise ValueError(f"{self.kind!r} nodes carry no value")

    @property
    def is_terminal(self) -> bool:
        return not self.children

    def depth(self) -> int:
        """Longest root-to-leaf path, counted in nodes (a lone terminal is 1)."""
        if not self.children:
            return 1
        return 1 + max(child.depth() for child in self.children)

    def node_count(self) -> int:
        return 1 + sum(child.node_count() for child in self.children)

    def __str__(self) -> str:
        return serialize(self)


def const(value: float) -> Expression:
    return Expression(CONST, float(value))


def var(name: str) -> Expression:
    if name not in VARIABLES:
        raise ValueError(f"unknown variable {name!r}")
    return Expression(name)


def op(kind: str, *children: Expression) -> Expression:
    return Expression(kind, children=tuple(children))


# ----------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------

def _eval(expr: Expression, x, y, z, t):
    kind = expr.kind
    if kind == CONST:
        return np.float64(expr.value)
    if kind == "x":
        return x
    if kind == "y":
        return y
    if kind == "z":
        return z
    if kind == "time":
        return t
    if kind in _UNARY_FN:
        return _UNARY_FN[kind](_eval(expr.children[0], x, y, z, t))
    fn = _BINARY_FN[kind]
    return fn(_eval(expr.children[0], x, y, z, t), _eval(expr.children[1], x, y, z, t))


def evaluate(expr: Expression, env: Env) -> float:
    """Evaluate at one point; NaN/±inf are legal return values."""
    with np.errstate(all="ignore"):
        return float(_eval(expr, np.float64(env.x), np.float64(env.y),
                           np.float64(env.z), np.float64(env.time)))


def evaluate_on_grid(expr: Expression, xs: np.ndarray, ys: np.ndarray,
                     zs: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Vectorized evaluation over parallel coordinate arrays.

    Bit-identical per element to :func:`evaluate` at the same point (both
    paths use the same float64 ufuncs).
    """
    with np.errstate(all="ignore"):
        out = _eval(expr, xs, ys, zs, ts)
    # A constant-only tree evaluates to a scalar; broadcast it out.
    return np.broadcast_to(np.asarray(out, dtype=np.float64), xs.shape)


# ----------------------------------------------------------------------
# Canonical text form
# ----------------------------------------------------------------------

def format_constant(value: float) -> str:
    """Shortest round-trip decimal, always with an explicit decimal point."""
    s = repr(float(value))
    if "." not in s:
        s = s.replace("e", ".0e") if "e" in s else s + ".0"
    return s


def serialize(expr: Expression) -> str:
    """Canonical prefix s-expression text, e.g. ``(div x (add x z))``."""
    if expr.kind == CONST:
        return format_constant(expr.value)
    if expr.kind in VARIABLES:
        return expr.kind
    inner = " ".join(serialize(child) for child in expr.children)
    return f"({expr.kind} {inner})"


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append((ch, i))
            i += 1
        else:
            start = i
            while i < len(text) and not text[i].isspace() and text[i] not in "()":
                i += 1
            tokens.append((text[start:i], start))
    return tokens


def _parse_terminal(token: str, pos: int) -> Expression:
    if token in VARIABLES:
        return Expression(token)
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"unknown symbol {token!r}", pos) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite constant {token!r}", pos)
    return Expression(CONST, value)


def _parse_expr(tokens: list[tuple[str, int]], i: int, length: int) -> tuple[Expression, int]:
    if i >= len(tokens):
        raise ParseError("unexpected end of input", length)
    token, pos = tokens[i]
    if token == ")":
        raise ParseError("unexpected ')'", pos)
    if token != "(":
        return _parse_terminal(token, pos), i + 1

    if i + 1 >= len(tokens):
        raise ParseError("unexpected end of input", length)
    head, head_pos = tokens[i + 1]
    if head in ("(", ")"):
        raise ParseError("expected an operator after '('", head_pos)
    if head not in ARITY:
        raise ParseError(f"unknown operator {head!r}", head_pos)

    arity = ARITY[head]
    children = []
    j = i + 2
    for _ in range(arity):
        if j < len(tokens) and tokens[j][0] == ")":
            raise ParseError(
                f"operator {head!r} takes {arity} arguments, got {len(children)}",
                tokens[j][1],
            )
        child, j = _parse_expr(tokens, j, length)
        children.append(child)
    if j >= len(tokens):
        raise ParseError("unexpected end of input, expected ')'", length)
    if tokens[j][0] != ")":
        raise ParseError(
            f"operator {head!r} takes {arity} arguments, got more", tokens[j][1]
        )
    return Expression(head, children=tuple(children)), j + 1


def parse(text: str) -> Expression:
    """Parse canonical expression text; inverse of :func:`serialize`.

    Raises :class:`ParseError` on unknown symbols, arity mismatches, or
    unbalanced parentheses.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input", 0)
    expr, i = _parse_expr(tokens, 0, len(text))
    if i != len(tokens):
        raise ParseError("trailing input after expression", tokens[i][1])
    return expr

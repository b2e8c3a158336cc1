"""Independent reference implementations used only by the tests.

Everything here deliberately avoids the package's own code paths: the stack
evaluator walks trees iteratively instead of recursively, the infix parser
re-reads emitted shader text under C/GLSL precedence rules, and the
brute-force distance loops over grid points one at a time.  All arithmetic
uses the same float64 primitives, so agreement with the package is expected
to be bit-exact.
"""

from __future__ import annotations

import numpy as np

from evoshape.expr import BINARY_OPS, CONST, Env, Expression, evaluate

_UNARY = {
    "neg": np.negative,
    "ceil": np.ceil,
    "floor": np.floor,
    "sqrt": np.sqrt,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
}
_BINARY = {
    "add": np.add,
    "sub": np.subtract,
    "mul": np.multiply,
    "div": np.divide,
}


def stack_evaluate(expr: Expression, env: Env) -> float:
    """Iterative postorder evaluation with an explicit operand stack."""
    bindings = {
        "x": np.float64(env.x),
        "y": np.float64(env.y),
        "z": np.float64(env.z),
        "time": np.float64(env.time),
    }
    operands: list[np.float64] = []
    work: list[tuple[Expression, bool]] = [(expr, False)]
    with np.errstate(all="ignore"):
        while work:
            node, ready = work.pop()
            if node.is_terminal:
                operands.append(
                    np.float64(node.value) if node.kind == CONST
                    else bindings[node.kind]
                )
            elif not ready:
                work.append((node, True))
                for child in reversed(node.children):
                    work.append((child, False))
            else:
                if node.kind in BINARY_OPS:
                    right = operands.pop()
                    left = operands.pop()
                    operands.append(_BINARY[node.kind](left, right))
                else:
                    operands.append(_UNARY[node.kind](operands.pop()))
    assert len(operands) == 1
    return float(operands[0])


# ----------------------------------------------------------------------
# Infix re-parsing of emitted shader expression text
# ----------------------------------------------------------------------

class InfixParser:
    """Recursive-descent parser for the emitted shader expression syntax.

    Grammar (C/GLSL precedence):
        expr    := term (('+' | '-') term)*
        term    := unary (('*' | '/') unary)*
        unary   := '-' unary | primary
        primary := number | 'time' | 'position' '.' coord
                 | func '(' expr ')' | '(' expr ')'

    Produces Expression trees; a leading minus becomes a ``neg`` node, so a
    parenthesized negative literal reconstructs as neg(constant) -- value
    identical, structure intentionally normalized by the grammar.
    """

    _FUNCTIONS = ("ceil", "floor", "sqrt", "log", "sin", "cos")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> Expression:
        tree = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return tree

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self) -> Expression:
        tree = self._term()
        while self._peek() in ("+", "-"):
            kind = "add" if self.text[self.pos] == "+" else "sub"
            self.pos += 1
            tree = Expression(kind, children=(tree, self._term()))
        return tree

    def _term(self) -> Expression:
        tree = self._unary()
        while self._peek() in ("*", "/"):
            kind = "mul" if self.text[self.pos] == "*" else "div"
            self.pos += 1
            tree = Expression(kind, children=(tree, self._unary()))
        return tree

    def _unary(self) -> Expression:
        if self._peek() == "-":
            self.pos += 1
            return Expression("neg", children=(self._unary(),))
        return self._primary()

    def _name(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def _expect(self, ch: str):
        if self._peek() != ch:
            raise ValueError(f"expected {ch!r} at {self.pos}")
        self.pos += 1

    def _primary(self) -> Expression:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            tree = self._expr()
            self._expect(")")
            return tree
        if ch.isdigit() or ch == ".":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isdigit()
                                                 or self.text[self.pos] == "."):
                self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos] in "eE":
                self.pos += 1
                if self.pos < len(self.text) and self.text[self.pos] in "+-":
                    self.pos += 1
                while self.pos < len(self.text) and self.text[self.pos].isdigit():
                    self.pos += 1
            return Expression(CONST, float(self.text[start:self.pos]))
        name = self._name()
        if name == "time":
            return Expression("time")
        if name == "position":
            self._expect(".")
            coord = self._name()
            if coord not in ("x", "y", "z"):
                raise ValueError(f"unknown coordinate {coord!r}")
            return Expression(coord)
        if name in self._FUNCTIONS:
            self._expect("(")
            tree = self._expr()
            self._expect(")")
            return Expression(name, children=(tree,))
        raise ValueError(f"unexpected token {name!r} at {self.pos}")


def parse_emitted(text: str) -> Expression:
    return InfixParser(text).parse()


def evaluate_emitted(text: str, env: Env) -> float:
    return evaluate(parse_emitted(text), env)


# ----------------------------------------------------------------------
# Brute-force distance over the sample grid
# ----------------------------------------------------------------------

def brute_force_distance(a: Expression, b: Expression, axis_values,
                         cap: float) -> float:
    """Point-by-point capped least-squares sum, x varying slowest."""
    per_point = []
    for x in axis_values:
        for y in axis_values:
            for z in axis_values:
                for t in axis_values:
                    env = Env(float(x), float(y), float(z), float(t))
                    diff = np.subtract(np.float64(stack_evaluate(a, env)),
                                       np.float64(stack_evaluate(b, env)))
                    with np.errstate(all="ignore"):
                        sq = np.multiply(diff, diff)
                    if not np.isfinite(sq):
                        sq = np.float64(cap)
                    per_point.append(min(float(sq), cap))
    return float(np.sum(np.array(per_point, dtype=np.float64)))

"""Vertex shader generation from expression trees.

The generated shader adds one evaluated scalar delta to all three coordinates
of each vertex.  ``position``, ``projectionMatrix``, and ``modelViewMatrix``
are bound by the host rendering environment (three.js ShaderMaterial injects
them); ``time`` is a uniform in seconds since scene start.

Raw operators are emitted deliberately: a division can blow a vertex out of
the view frustum, and those destructive perturbations are part of the search
space rather than an error.
"""

from __future__ import annotations

import re
import uuid
from dataclasses import dataclass

from .expr import BINARY_OPS, CONST, Expression, VARIABLES, format_constant, serialize

SHADER_TEMPLATE = """uniform float time;
void main() {
    vec3 p = position;
    p.xyz += <EXPR>;
    gl_Position = projectionMatrix * modelViewMatrix * vec4(p, 1.0);
}
"""

_INFIX = {"add": "+", "sub": "-", "mul": "*", "div": "/"}
_TERMINAL_NAMES = {"x": "position.x", "y": "position.y", "z": "position.z",
                   "time": "time"}

# Field selectors are tokenized like any identifier, so the single-coordinate
# selectors x/y/z belong here alongside the xyz swizzle.
ALLOWED_IDENTIFIERS = frozenset({
    "position", "time", "p", "gl_Position", "projectionMatrix",
    "modelViewMatrix", "vec4", "vec3", "uniform", "float", "void", "main",
    "xyz", "x", "y", "z", "ceil", "floor", "sqrt", "log", "sin", "cos",
})


@dataclass(frozen=True)
class ShaderArtifact:
    glsl_source: str
    expression_text: str
    artifact_id: str


@dataclass(frozen=True)
class LintViolation:
    offset: int
    message: str


def _operand(child: Expression) -> str:
    text = emit_expression(child)
    if child.kind in BINARY_OPS:
        return f"({text})"
    return text


def emit_expression(expr: Expression) -> str:
    """Infix shader-language text for one expression.

    Binary operands are parenthesized exactly when they are themselves
    binary operations; unary operators become function calls; negation is
    ``-(...)``; negative constants are parenthesized.
    """
    kind = expr.kind
    if kind == CONST:
        text = format_constant(expr.value)
        return f"({text})" if expr.value < 0 else text
    if kind in VARIABLES:
        return _TERMINAL_NAMES[kind]
    if kind in BINARY_OPS:
        left, right = expr.children
        return f"{_operand(left)} {_INFIX[kind]} {_operand(right)}"
    if kind == "neg":
        return f"-({emit_expression(expr.children[0])})"
    return f"{kind}({emit_expression(expr.children[0])})"


def emit_vertex_shader(expr: Expression) -> ShaderArtifact:
    """Full vertex shader displacing p.xyz by the expression's value."""
    source = SHADER_TEMPLATE.replace("<EXPR>", emit_expression(expr))
    return ShaderArtifact(source, serialize(expr), uuid.uuid4().hex)


_TOKEN = re.compile(
    r"""
    (?P<number>(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<other>.)
    """,
    re.VERBOSE,
)


def lint_shader(source: str) -> list[LintViolation]:
    """Whitelist lint; an empty result means the source is accepted.

    Checks that parentheses balance, every identifier is on the whitelist,
    and every numeric literal carries a decimal point.  Returns violations
    with byte offsets; never raises.
    """
    violations = []
    depth = 0
    for match in _TOKEN.finditer(source):
        offset = match.start()
        if match.lastgroup == "number":
            if "." not in match.group():
                violations.append(LintViolation(
                    offset, f"numeric literal {match.group()!r} lacks a decimal point"
                ))
        elif match.lastgroup == "ident":
            if match.group() not in ALLOWED_IDENTIFIERS:
                violations.append(LintViolation(
                    offset, f"identifier {match.group()!r} is not whitelisted"
                ))
        elif match.lastgroup == "open":
            depth += 1
        elif match.lastgroup == "close":
            depth -= 1
            if depth < 0:
                violations.append(LintViolation(offset, "unbalanced ')'"))
                depth = 0
    if depth > 0:
        violations.append(LintViolation(len(source), "unclosed '('"))
    return violations

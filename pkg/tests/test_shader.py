import struct

from hypothesis import given, settings

from conftest import envs, expressions
from evoshape.expr import evaluate, parse
from evoshape.shader import (
    SHADER_TEMPLATE,
    emit_expression,
    emit_vertex_shader,
    lint_shader,
)
from oracles import evaluate_emitted

FIG5 = "(div x (add x z))"
EQ1_RHS = "position.x / (position.x + position.z)"


class TestEmitExpression:
    def test_fig5_matches_displacement_equation(self):
        assert emit_expression(parse(FIG5)) == EQ1_RHS

    def test_undulation(self):
        assert emit_expression(parse("(sin (add y time))")) == \
            "sin(position.y + time)"

    def test_constant(self):
        assert emit_expression(parse("1.0")) == "1.0"

    def test_negative_constant_parenthesized(self):
        assert emit_expression(parse("(mul x -0.5)")) == "position.x * (-0.5)"

    def test_negation_wraps_operand(self):
        assert emit_expression(parse("(neg (sin time))")) == "-(sin(time))"
        assert emit_expression(parse("(sub x (neg y))")) == \
            "position.x - -(position.y)"

    def test_binary_operands_parenthesized_iff_binary(self):
        assert emit_expression(parse("(add (mul x y) z)")) == \
            "(position.x * position.y) + position.z"
        assert emit_expression(parse("(mul (sin x) (cos y))")) == \
            "sin(position.x) * cos(position.y)"

    def test_unary_function_calls(self):
        assert emit_expression(parse("(ceil (floor (sqrt (log x))))")) == \
            "ceil(floor(sqrt(log(position.x))))"


class TestEmitVertexShader:
    def test_fig5_displacement_statement(self):
        artifact = emit_vertex_shader(parse(FIG5))
        assert f"p.xyz += {EQ1_RHS};" in artifact.glsl_source

    def test_sin_y(self):
        artifact = emit_vertex_shader(parse("(sin y)"))
        assert "p.xyz += sin(position.y);" in artifact.glsl_source

    def test_zero_displacement(self):
        artifact = emit_vertex_shader(parse("0.0"))
        assert "p.xyz += 0.0;" in artifact.glsl_source

    def test_template_is_exact(self):
        artifact = emit_vertex_shader(parse(FIG5))
        assert artifact.glsl_source == SHADER_TEMPLATE.replace("<EXPR>", EQ1_RHS)
        assert SHADER_TEMPLATE.startswith("uniform float time;\n")
        assert "gl_Position = projectionMatrix * modelViewMatrix * vec4(p, 1.0);" \
            in SHADER_TEMPLATE

    def test_artifact_fields(self):
        artifact = emit_vertex_shader(parse("(sin y)"))
        assert parse(artifact.expression_text) == parse("(sin y)")
        assert lint_shader(artifact.glsl_source) == []
        assert artifact.artifact_id

    def test_artifact_ids_unique(self):
        expr = parse("x")
        assert emit_vertex_shader(expr).artifact_id != \
            emit_vertex_shader(expr).artifact_id


class TestLintShader:
    def test_accepts_emitted_shader(self):
        assert lint_shader(emit_vertex_shader(parse(FIG5)).glsl_source) == []

    def test_rejects_foreign_identifier(self):
        source = SHADER_TEMPLATE.replace("<EXPR>", "texture2D(position.x)")
        violations = lint_shader(source)
        assert any("texture2D" in v.message for v in violations)

    def test_rejects_integer_literal(self):
        source = SHADER_TEMPLATE.replace("<EXPR>", "position.x / 10")
        violations = lint_shader(source)
        assert any("10" in v.message and "decimal point" in v.message
                   for v in violations)

    def test_rejects_unbalanced_parens(self):
        assert any("unclosed" in v.message for v in lint_shader("sin(position.x"))
        assert any("unbalanced" in v.message for v in lint_shader("position.x)"))

    def test_violations_carry_offsets(self):
        source = "bad_name"
        violations = lint_shader(source)
        assert violations[0].offset == 0

    def test_accepts_exponent_literals(self):
        source = SHADER_TEMPLATE.replace("<EXPR>", "position.x * 1.0e-05")
        assert lint_shader(source) == []

    @settings(max_examples=200)
    @given(expressions)
    def test_accepts_all_emissions(self, expr):
        assert lint_shader(emit_vertex_shader(expr).glsl_source) == []


class TestSemanticAgreement:
    @settings(max_examples=150)
    @given(expressions, envs)
    def test_emitted_text_evaluates_identically(self, expr, env):
        emitted = emit_expression(expr)
        assert struct.pack("<d", evaluate_emitted(emitted, env)) == \
            struct.pack("<d", evaluate(expr, env))

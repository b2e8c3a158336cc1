import dataclasses
import math
import struct

import pytest
from hypothesis import given

from conftest import envs, expressions
from evoshape.expr import (
    ARITY,
    CONST,
    Env,
    Expression,
    OPERATORS,
    ParseError,
    TERMINAL_KINDS,
    evaluate,
    format_constant,
    parse,
    serialize,
)
from oracles import stack_evaluate

FIG5 = "(div x (add x z))"


def bits(value: float) -> bytes:
    return struct.pack("<d", value)


class TestEvaluate:
    def test_fig5_expression(self):
        assert evaluate(parse(FIG5), Env(x=2, y=0, z=2, time=0)) == 0.5

    def test_sin_at_zero(self):
        assert evaluate(parse("(sin y)"), Env(0, 0, 0, 0)) == 0.0

    def test_zero_over_zero_is_nan(self):
        assert math.isnan(evaluate(parse(FIG5), Env(x=0, y=0, z=0, time=0)))

    def test_undulation_peak(self):
        result = evaluate(parse("(sin (add y time))"), Env(0, 0, 0, math.pi / 2))
        assert result == 1.0

    def test_division_by_zero_gives_signed_infinity(self):
        assert evaluate(parse("(div x y)"), Env(1, 0, 0, 0)) == math.inf
        assert evaluate(parse("(div x y)"), Env(-1, 0, 0, 0)) == -math.inf

    def test_log_and_sqrt_of_negative_are_nan(self):
        assert math.isnan(evaluate(parse("(log x)"), Env(-1, 0, 0, 0)))
        assert math.isnan(evaluate(parse("(sqrt x)"), Env(-2, 0, 0, 0)))

    @given(expressions, envs)
    def test_deterministic(self, expr, env):
        assert bits(evaluate(expr, env)) == bits(evaluate(expr, env))

    @given(expressions, envs)
    def test_matches_stack_oracle(self, expr, env):
        assert bits(evaluate(expr, env)) == bits(stack_evaluate(expr, env))

    def test_env_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Env(math.nan, 0, 0, 0)
        with pytest.raises(ValueError):
            Env(0, 0, math.inf, 0)


class TestSerialize:
    def test_fig5_round_trip_text(self):
        assert serialize(parse(FIG5)) == FIG5

    def test_single_constant(self):
        assert serialize(Expression(CONST, 1.0)) == "1.0"

    def test_nested_unary(self):
        expr = Expression("neg", children=(
            Expression("sin", children=(Expression("time"),)),
        ))
        assert serialize(expr) == "(neg (sin time))"

    def test_constant_formatting_always_has_decimal_point(self):
        assert format_constant(1e-05) == "1.0e-05"
        assert format_constant(1e17) == "1.0e+17"
        assert format_constant(-0.5) == "-0.5"
        assert format_constant(20.0) == "20.0"
        assert float(format_constant(1e-05)) == 1e-05

    @given(expressions)
    def test_round_trip(self, expr):
        text = serialize(expr)
        again = parse(text)
        assert again == expr
        assert serialize(again) == text


class TestParse:
    def test_fig5(self):
        expr = parse(FIG5)
        assert expr.kind == "div"
        assert expr.children[0].kind == "x"
        assert expr.children[1].kind == "add"

    def test_arity_error(self):
        with pytest.raises(ParseError, match="takes 2 arguments"):
            parse("(add x)")

    def test_too_many_arguments(self):
        with pytest.raises(ParseError, match="takes 2 arguments"):
            parse("(add x y z)")

    def test_unknown_operator(self):
        with pytest.raises(ParseError, match="unknown operator 'pow'"):
            parse("(pow x x)")

    def test_unknown_symbol(self):
        with pytest.raises(ParseError, match="unknown symbol 'w'"):
            parse("(add w x)")

    def test_unbalanced(self):
        with pytest.raises(ParseError, match="unexpected end of input"):
            parse("(sin")
        with pytest.raises(ParseError, match="unexpected '\\)'"):
            parse(")")

    def test_trailing_input(self):
        with pytest.raises(ParseError, match="trailing input"):
            parse("x y")

    def test_empty(self):
        with pytest.raises(ParseError):
            parse("   ")

    def test_non_finite_constant_rejected(self):
        with pytest.raises(ParseError, match="non-finite"):
            parse("(add x inf)")

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as err:
            parse("(add x (pow y z))")
        assert err.value.position == 8


class TestMetrics:
    @pytest.mark.parametrize("text,depth,count", [
        ("x", 1, 1),
        (FIG5, 3, 5),
        ("(sin (sin (sin x)))", 4, 4),
        ("1.0", 1, 1),
    ])
    def test_depth_and_node_count(self, text, depth, count):
        expr = parse(text)
        assert expr.depth() == depth
        assert expr.node_count() == count


class TestExpression:
    def test_immutable(self):
        expr = parse("x")
        with pytest.raises(dataclasses.FrozenInstanceError):
            expr.kind = "y"

    def test_operator_sets(self):
        assert len(OPERATORS) == 11
        assert len(TERMINAL_KINDS) == 5
        assert all(ARITY[op] in (1, 2) for op in OPERATORS)

    def test_arity_enforced_on_construction(self):
        with pytest.raises(ValueError):
            Expression("add", children=(Expression("x"),))

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            Expression("tan", children=(Expression("x"),))

    def test_constant_needs_finite_value(self):
        with pytest.raises(ValueError):
            Expression(CONST, math.inf)
        with pytest.raises(ValueError):
            Expression(CONST)

"""
Unit Tests for the coefficient expression language.

Covers tokenizing, precedence and associativity, printing, evaluation
domains and exact differentiation against central differences.
"""

import math

import numpy as np
import pytest

from shockwkb.constants import FUNCTION_NAMES
from shockwkb.exceptions import EvaluationDomainError, ParseError
from shockwkb.exprlang import (
    BinaryOperator,
    BinOp,
    Const,
    Func,
    Neg,
    Var,
    diff,
    differentiate,
    evaluate,
    free_variables,
    is_constant,
    parse,
    to_text,
    tokenize,
)

X, T = Var("x"), Var("t")
SAFE_FUNCTIONS = ("sin", "cos", "tanh", "atan", "exp")


def random_tree(rng: np.random.Generator, depth: int):
    """Random expression tree that is finite on [-1, 1]^2."""
    if depth == 0 or rng.random() < 0.25:
        choice = rng.integers(3)
        if choice == 0:
            return Const(float(rng.choice([0.5, 1.0, 2.0, 3.0, 0.25])))
        return X if choice == 1 else T

    kind = rng.integers(7)
    left = random_tree(rng, depth - 1)
    if kind == 0:
        return BinOp(BinaryOperator.ADD, left, random_tree(rng, depth - 1))
    if kind == 1:
        return BinOp(BinaryOperator.SUB, left, random_tree(rng, depth - 1))
    if kind == 2:
        return BinOp(BinaryOperator.MUL, left, random_tree(rng, depth - 1))
    if kind == 3:
        # 1 + u^2 never vanishes
        denominator = BinOp(
            BinaryOperator.ADD, Const(1.0), BinOp(BinaryOperator.POW, random_tree(rng, depth - 1), Const(2.0))
        )
        return BinOp(BinaryOperator.DIV, left, denominator)
    if kind == 4:
        return BinOp(BinaryOperator.POW, left, Const(float(rng.choice([2.0, 3.0]))))
    if kind == 5:
        return Neg(left)
    name = SAFE_FUNCTIONS[rng.integers(len(SAFE_FUNCTIONS))]
    if name == "exp":
        left = Func("tanh", left)
    return Func(name, left)


class TestTokenizer:
    """Test lexical analysis."""

    def test_tokens_and_offsets(self):
        """Tokens carry kind, text and offset."""
        tokens = tokenize("2.5*x^2 + sin(t)")
        assert [tok.text for tok in tokens] == ["2.5", "*", "x", "^", "2", "+", "sin", "(", "t", ")"]
        assert tokens[5].offset == 8
        assert tokens[0].kind == "number"
        assert tokens[6].kind == "ident"

    def test_scientific_notation(self):
        """Exponent suffixes belong to the number."""
        assert [tok.text for tok in tokenize("1.5e-3*x")] == ["1.5e-3", "*", "x"]

    def test_invalid_character(self):
        """Characters outside the grammar are rejected with their offset."""
        with pytest.raises(ParseError) as exc_info:
            tokenize("x $ t")
        assert exc_info.value.offset == 2


class TestParser:
    """Test parsing, precedence and error reporting."""

    def test_worked_example_value(self):
        """(x^2+1)^2/(t^2+1) at (1, 0) is 4."""
        assert evaluate(parse("(x^2+1)^2/(t^2+1)"), 1.0, 0.0) == pytest.approx(4.0)

    def test_power_is_right_associative(self):
        """2^3^2 = 2^9."""
        assert evaluate(parse("2^3^2"), 0.0, 0.0) == pytest.approx(512.0)

    def test_power_binds_tighter_than_unary_minus(self):
        """-x^2 is -(x^2); 2^-x is 2^(-x)."""
        assert evaluate(parse("-x^2"), 3.0, 0.0) == pytest.approx(-9.0)
        assert evaluate(parse("2^-x"), 1.0, 0.0) == pytest.approx(0.5)

    def test_left_associative_subtraction_and_division(self):
        assert evaluate(parse("8-3-2"), 0.0, 0.0) == pytest.approx(3.0)
        assert evaluate(parse("8/4/2"), 0.0, 0.0) == pytest.approx(1.0)

    def test_named_constants(self):
        assert evaluate(parse("pi"), 0.0, 0.0) == pytest.approx(math.pi)
        assert evaluate(parse("e^x"), 1.0, 0.0) == pytest.approx(math.e)

    def test_functions(self):
        """Every built-in function parses and evaluates."""
        value = evaluate(parse("sin(x)+cos(x)+exp(t)+ln(1+x)+sqrt(4)+tanh(0)+sinh(0)+cosh(0)+atan(1)"), 0.0, 0.0)
        assert value == pytest.approx(0 + 1 + 1 + 0 + 2 + 0 + 0 + 1 + math.pi / 4)

    def test_incomplete_function_call_offset(self):
        """'tanh(' fails at the end of the input."""
        with pytest.raises(ParseError) as exc_info:
            parse("tanh(")
        assert exc_info.value.offset == 5

    def test_unbalanced_parenthesis(self):
        with pytest.raises(ParseError, match="Unbalanced"):
            parse("(x+1")
        with pytest.raises(ParseError, match="Unbalanced"):
            parse("x+1)")

    def test_unknown_identifier(self):
        with pytest.raises(ParseError, match="Unknown identifier 'y'") as exc_info:
            parse("x + y")
        assert exc_info.value.offset == 4

    def test_function_without_argument(self):
        with pytest.raises(ParseError, match="requires an argument"):
            parse("sin x")

    def test_empty_expression(self):
        with pytest.raises(ParseError, match="Empty"):
            parse("   ")

    def test_error_message_contains_offset_and_expectation(self):
        with pytest.raises(ParseError) as exc_info:
            parse("x*")
        text = str(exc_info.value)
        assert "offset 2" in text
        assert "expected" in text


class TestPrinter:
    """Test printing back to the grammar."""

    @pytest.mark.parametrize(
        "text",
        ["(x^2+1)^2/(t^2+1)", "-x^2", "(-x)^2", "2^(-x)", "x-(t-1)", "(x^2)^3", "x^2^3", "sin(x*t)/(1+x)"],
    )
    def test_canonical_texts_reprint(self, text):
        """Printing inserts parentheses only where needed."""
        assert to_text(parse(text)) == text

    def test_round_trip_random_trees(self):
        """parse(to_text(e)) rebuilds the same tree."""
        rng = np.random.default_rng(20240611)
        for _ in range(1000):
            tree = random_tree(rng, 4)
            assert parse(to_text(tree)) == tree, to_text(tree)


class TestEvaluation:
    """Test vectorized evaluation and domain checks."""

    def test_broadcasting(self):
        xs = np.linspace(-1.0, 1.0, 5)
        ts = np.linspace(0.0, 1.0, 3)[:, None]
        values = evaluate(parse("x*t + 1"), xs, ts)
        assert values.shape == (3, 5)
        np.testing.assert_allclose(values, xs * ts + 1)

    def test_constant_broadcasts_to_input_shape(self):
        values = evaluate(parse("2"), np.zeros(4), 0.0)
        assert values.shape == (4,)
        assert np.all(values == 2.0)

    def test_scalar_inputs_give_float(self):
        assert isinstance(evaluate(parse("x+t"), 1.0, 2.0), float)

    @pytest.mark.parametrize(
        "text,x",
        [("ln(x)", 0.0), ("sqrt(x)", -1.0), ("1/x", 0.0), ("x^0.5", -2.0), ("x^(-1)", 0.0), ("exp(exp(x))", 10.0)],
    )
    def test_domain_errors(self, text, x):
        with pytest.raises(EvaluationDomainError):
            evaluate(parse(text), x, 0.0)

    def test_integer_power_of_negative_base(self):
        assert evaluate(parse("x^3"), -2.0, 0.0) == pytest.approx(-8.0)

    def test_free_variables(self):
        assert free_variables(parse("sin(x)+pi")) == frozenset({"x"})
        assert is_constant(parse("2*pi+e"))
        assert not is_constant(parse("t"))


class TestDifferentiation:
    """Test exact derivatives."""

    def test_known_derivatives(self):
        expr = parse("(x^2+1)^2/(t^2+1)")
        assert evaluate(diff(expr, "x"), 1.0, 0.0) == pytest.approx(8.0)
        assert evaluate(diff(expr, "t"), 1.0, 1.0) == pytest.approx(-2.0)

    def test_simplification_of_constants(self):
        """d/dx of an x-free expression folds to zero."""
        assert diff(parse("t^2+sin(t)"), "x") == Const(0.0)
        assert diff(parse("3*x"), "x") == Const(3.0)

    def test_variable_exponent(self):
        """d/dx 2^x = ln 2 * 2^x."""
        assert evaluate(diff(parse("2^x"), "x"), 1.0, 0.0) == pytest.approx(2.0 * math.log(2.0))

    def test_invalid_variable(self):
        with pytest.raises(ValueError):
            diff(parse("x"), "y")

    def test_diff_is_cached(self):
        expr = parse("sin(x)*t")
        assert diff(expr, "x") is diff(expr, "x")

    def test_cached_and_uncached_agree(self):
        expr = parse("atan(x*t)/(1+x^2)")
        assert diff(expr, "t") == differentiate(expr, "t")

    @pytest.mark.parametrize("name", FUNCTION_NAMES)
    def test_functions_against_central_differences(self, name):
        """Every supported function at 1000 random points, h = 1e-5."""
        rng = np.random.default_rng(sum(map(ord, name)))
        low = 0.5 if name in ("ln", "sqrt") else -2.0
        expr = parse(f"{name}(x*t)")
        dx = diff(expr, "x")
        h = 1e-5
        for x, t in zip(rng.uniform(low, 2.0, 1000), rng.uniform(0.5, 1.0, 1000)):
            exact = evaluate(dx, x, t)
            approx = (evaluate(expr, x + h, t) - evaluate(expr, x - h, t)) / (2 * h)
            assert abs(exact - approx) <= 1e-6 * (1.0 + abs(exact))

    @pytest.mark.parametrize("var", ["x", "t"])
    def test_against_central_differences(self, var):
        """Exact derivatives of 1000 random expressions match central differences."""
        rng = np.random.default_rng(7 if var == "x" else 11)
        h = 1e-6
        for _ in range(1000):
            expr = random_tree(rng, 3)
            x, t = rng.uniform(-1.0, 1.0, size=2)
            exact = evaluate(diff(expr, var), x, t)
            if var == "x":
                plus, minus = evaluate(expr, x + h, t), evaluate(expr, x - h, t)
            else:
                plus, minus = evaluate(expr, x, t + h), evaluate(expr, x, t - h)
            approx = (plus - minus) / (2 * h)
            scale = 1.0 + abs(exact) + abs(evaluate(expr, x, t))
            assert abs(exact - approx) <= 1e-5 * scale, to_text(expr)

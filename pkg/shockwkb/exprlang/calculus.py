"""
Vectorized evaluation and exact symbolic differentiation.

Evaluation accepts scalars or numpy arrays for ``x`` and ``t`` and broadcasts
them. Differentiation builds a new tree through smart constructors that only
fold constants and apply 0/1 identities.
"""

from __future__ import annotations

import math
from functools import lru_cache, singledispatch
from typing import Union

import numpy as np

from shockwkb.exceptions import EvaluationDomainError
from shockwkb.exprlang.nodes import (
    ONE,
    ZERO,
    BinaryOperator,
    BinOp,
    Const,
    Expr,
    Func,
    Neg,
    Var,
    is_constant,
    to_text,
)

ArrayLike = Union[float, np.ndarray]

_NUMPY_FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "ln": np.log,
    "sqrt": np.sqrt,
    "tanh": np.tanh,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "atan": np.arctan,
}


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


@singledispatch
def _evaluate(node, x: np.ndarray, t: np.ndarray):
    raise TypeError(f"Not an expression node: {node!r}")


@_evaluate.register
def _(node: Const, x, t):
    return np.float64(node.value)


@_evaluate.register
def _(node: Var, x, t):
    return x if node.name == "x" else t


@_evaluate.register
def _(node: Neg, x, t):
    return -_evaluate(node.operand, x, t)


@_evaluate.register
def _(node: Func, x, t):
    arg = _evaluate(node.arg, x, t)
    if node.name == "ln" and np.any(arg <= 0):
        raise EvaluationDomainError(f"ln of non-positive argument in {to_text(node)}", node=node)
    if node.name == "sqrt" and np.any(arg < 0):
        raise EvaluationDomainError(f"sqrt of negative argument in {to_text(node)}", node=node)
    return _NUMPY_FUNCTIONS[node.name](arg)


@_evaluate.register
def _(node: BinOp, x, t):
    left = _evaluate(node.left, x, t)
    right = _evaluate(node.right, x, t)
    op = node.op
    if op is BinaryOperator.ADD:
        return left + right
    if op is BinaryOperator.SUB:
        return left - right
    if op is BinaryOperator.MUL:
        return left * right
    if op is BinaryOperator.DIV:
        if np.any(right == 0):
            raise EvaluationDomainError(f"division by zero in {to_text(node)}", node=node)
        return left / right
    # POW: integer exponents accept any base
    fractional = right != np.round(right)
    if np.any(fractional & (left <= 0)):
        raise EvaluationDomainError(
            f"non-integer power of non-positive base in {to_text(node)}", node=node
        )
    if np.any((left == 0) & (right < 0)):
        raise EvaluationDomainError(f"negative power of zero in {to_text(node)}", node=node)
    return np.power(left, right)


def evaluate(expr: Expr, x: ArrayLike, t: ArrayLike) -> ArrayLike:
    """
    Evaluate an expression at (x, t).

    Args:
        expr: Expression tree
        x: Scalar or array of x values
        t: Scalar or array of t values (broadcast against x)

    Returns:
        float for scalar inputs, otherwise an ndarray of the broadcast shape

    Raises:
        EvaluationDomainError: ln of non-positive, division by zero, fractional
            power of a non-positive base, sqrt of a negative, or a non-finite result
    """
    x_arr = np.asarray(x, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    shape = np.broadcast_shapes(x_arr.shape, t_arr.shape)
    with np.errstate(all="ignore"):
        value = np.broadcast_to(_evaluate(expr, x_arr, t_arr), shape)
    if not np.all(np.isfinite(value)):
        raise EvaluationDomainError(f"non-finite value of {to_text(expr)}", node=expr)
    if value.ndim == 0:
        return float(value)
    return np.array(value, dtype=float)


# ---------------------------------------------------------------------------
# Smart constructors
# ---------------------------------------------------------------------------


def _is(expr: Expr, value: float) -> bool:
    return isinstance(expr, Const) and expr.value == value


def _fold(op: BinaryOperator, left: Expr, right: Expr):
    if not (isinstance(left, Const) and isinstance(right, Const)):
        return None
    try:
        value = evaluate(BinOp(op, left, right), 0.0, 0.0)
    except EvaluationDomainError:
        return None
    return Const(value)


def neg(operand: Expr) -> Expr:
    if isinstance(operand, Const):
        return Const(-operand.value)
    if isinstance(operand, Neg):
        return operand.operand
    return Neg(operand)


def add(left: Expr, right: Expr) -> Expr:
    if _is(left, 0.0):
        return right
    if _is(right, 0.0):
        return left
    return _fold(BinaryOperator.ADD, left, right) or BinOp(BinaryOperator.ADD, left, right)


def sub(left: Expr, right: Expr) -> Expr:
    if _is(right, 0.0):
        return left
    if _is(left, 0.0):
        return neg(right)
    return _fold(BinaryOperator.SUB, left, right) or BinOp(BinaryOperator.SUB, left, right)


def mul(left: Expr, right: Expr) -> Expr:
    if _is(left, 0.0) or _is(right, 0.0):
        return ZERO
    if _is(left, 1.0):
        return right
    if _is(right, 1.0):
        return left
    return _fold(BinaryOperator.MUL, left, right) or BinOp(BinaryOperator.MUL, left, right)


def div(left: Expr, right: Expr) -> Expr:
    if _is(right, 1.0):
        return left
    if _is(left, 0.0):
        return ZERO
    return _fold(BinaryOperator.DIV, left, right) or BinOp(BinaryOperator.DIV, left, right)


def power(base: Expr, exponent: Expr) -> Expr:
    if _is(exponent, 1.0):
        return base
    if _is(exponent, 0.0):
        return ONE
    return _fold(BinaryOperator.POW, base, exponent) or BinOp(BinaryOperator.POW, base, exponent)


def func(name: str, arg: Expr) -> Expr:
    if isinstance(arg, Const):
        try:
            return Const(evaluate(Func(name, arg), 0.0, 0.0))
        except EvaluationDomainError:
            pass
    return Func(name, arg)


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------


def _outer_derivative(name: str, u: Expr) -> Expr:
    """d f(u) / du for the built-in functions."""
    if name == "sin":
        return func("cos", u)
    if name == "cos":
        return neg(func("sin", u))
    if name == "exp":
        return func("exp", u)
    if name == "ln":
        return div(ONE, u)
    if name == "sqrt":
        return div(ONE, mul(Const(2.0), func("sqrt", u)))
    if name == "tanh":
        return sub(ONE, power(func("tanh", u), Const(2.0)))
    if name == "sinh":
        return func("cosh", u)
    if name == "cosh":
        return func("sinh", u)
    if name == "atan":
        return div(ONE, add(ONE, power(u, Const(2.0))))
    raise ValueError(f"Unknown function: {name}")


@singledispatch
def differentiate(node, var: str) -> Expr:
    """
    Exact derivative of ``node`` with respect to ``var`` (uncached).

    Use ``diff`` in application code; this entry point re-derives every time.
    """
    raise TypeError(f"Not an expression node: {node!r}")


@differentiate.register
def _(node: Const, var: str) -> Expr:
    return ZERO


@differentiate.register
def _(node: Var, var: str) -> Expr:
    return ONE if node.name == var else ZERO


@differentiate.register
def _(node: Neg, var: str) -> Expr:
    return neg(differentiate(node.operand, var))


@differentiate.register
def _(node: Func, var: str) -> Expr:
    return mul(_outer_derivative(node.name, node.arg), differentiate(node.arg, var))


@differentiate.register
def _(node: BinOp, var: str) -> Expr:
    u, v = node.left, node.right
    du, dv = differentiate(u, var), differentiate(v, var)
    op = node.op
    if op is BinaryOperator.ADD:
        return add(du, dv)
    if op is BinaryOperator.SUB:
        return sub(du, dv)
    if op is BinaryOperator.MUL:
        return add(mul(du, v), mul(u, dv))
    if op is BinaryOperator.DIV:
        return div(sub(mul(du, v), mul(u, dv)), power(v, Const(2.0)))
    if is_constant(v):
        # d u^c = c * u^(c-1) * u'
        return mul(mul(v, power(u, sub(v, ONE))), du)
    # d u^v = u^v * (v' ln u + v u'/u), valid where u > 0
    return mul(node, add(mul(dv, func("ln", u)), div(mul(v, du), u)))


@lru_cache(maxsize=None)
def diff(expr: Expr, var: str) -> Expr:
    """
    Cached exact derivative of ``expr`` with respect to ``var`` (``"x"`` or ``"t"``).

    Derivatives are computed once per (expr, var) pair; expressions are
    immutable so the cache never goes stale.
    """
    if var not in ("x", "t"):
        raise ValueError(f"Unknown variable: {var!r}")
    return differentiate(expr, var)

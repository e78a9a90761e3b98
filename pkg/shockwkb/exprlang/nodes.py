"""
Expression tree nodes and the precedence-aware printer.

Nodes are frozen dataclasses: hashable, comparable by structure and safe to
share between threads. ``to_text`` prints the minimal parenthesization that
re-parses to the same tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


class BinaryOperator(Enum):
    """Binary operators of the expression language."""

    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    POW = "^"


@dataclass(frozen=True)
class Const:
    """Real constant. ``name`` keeps ``pi``/``e`` for printing only."""

    value: float
    name: Optional[str] = field(default=None, compare=False)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Var:
    """Independent variable, ``x`` or ``t``."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg:
    """Unary minus."""

    operand: "Expr"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class BinOp:
    """Binary operation."""

    op: BinaryOperator
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Func:
    """Application of a built-in function to one argument."""

    name: str
    arg: "Expr"

    def __str__(self) -> str:
        return to_text(self)


Expr = Union[Const, Var, Neg, BinOp, Func]

ZERO = Const(0.0)
ONE = Const(1.0)

# Binding strength; higher binds tighter
_PRECEDENCE = {
    BinaryOperator.ADD: 1,
    BinaryOperator.SUB: 1,
    BinaryOperator.MUL: 2,
    BinaryOperator.DIV: 2,
    BinaryOperator.POW: 4,
}
_NEG_PRECEDENCE = 3
_ATOM_PRECEDENCE = 5


def precedence(expr: Expr) -> int:
    """Binding strength of the root node of ``expr``."""
    if isinstance(expr, BinOp):
        return _PRECEDENCE[expr.op]
    if isinstance(expr, Neg):
        return _NEG_PRECEDENCE
    if isinstance(expr, Const) and expr.name is None and expr.value < 0:
        return _NEG_PRECEDENCE
    return _ATOM_PRECEDENCE


def _format_number(value: float) -> str:
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _wrap(expr: Expr, needs_parens: bool) -> str:
    text = to_text(expr)
    return f"({text})" if needs_parens else text


def to_text(expr: Expr) -> str:
    """
    Print an expression in the grammar accepted by ``parse``.

    Args:
        expr: Expression tree

    Returns:
        Text with parentheses only where precedence or associativity requires them
    """
    if isinstance(expr, Const):
        if expr.name is not None:
            return expr.name
        if expr.value < 0:
            return "-" + _format_number(-expr.value)
        return _format_number(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Neg):
        return "-" + _wrap(expr.operand, precedence(expr.operand) < _NEG_PRECEDENCE)
    if isinstance(expr, Func):
        return f"{expr.name}({to_text(expr.arg)})"
    if isinstance(expr, BinOp):
        level = _PRECEDENCE[expr.op]
        if expr.op is BinaryOperator.POW:
            # right-associative: a^b^c == a^(b^c)
            left = _wrap(expr.left, precedence(expr.left) <= level)
            right = _wrap(expr.right, precedence(expr.right) < level)
        else:
            left = _wrap(expr.left, precedence(expr.left) < level)
            right = _wrap(expr.right, precedence(expr.right) <= level)
        return f"{left}{expr.op.value}{right}"
    raise TypeError(f"Not an expression node: {expr!r}")


def free_variables(expr: Expr) -> frozenset:
    """Names of the variables occurring in ``expr``."""
    if isinstance(expr, Var):
        return frozenset({expr.name})
    if isinstance(expr, Const):
        return frozenset()
    if isinstance(expr, Neg):
        return free_variables(expr.operand)
    if isinstance(expr, Func):
        return free_variables(expr.arg)
    return free_variables(expr.left) | free_variables(expr.right)


def is_constant(expr: Expr) -> bool:
    """True if ``expr`` depends on neither x nor t."""
    return not free_variables(expr)

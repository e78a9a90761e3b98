"""
Coefficient expression language: parse, print, evaluate and differentiate
closed-form expressions in the variables x and t.
"""

from shockwkb.exprlang.calculus import diff, differentiate, evaluate
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
    free_variables,
    is_constant,
    to_text,
)
from shockwkb.exprlang.parser import parse, tokenize

__all__ = [
    "BinOp",
    "BinaryOperator",
    "Const",
    "Expr",
    "Func",
    "Neg",
    "ONE",
    "Var",
    "ZERO",
    "diff",
    "differentiate",
    "evaluate",
    "free_variables",
    "is_constant",
    "parse",
    "to_text",
    "tokenize",
]

"""
Tokenizer and recursive-descent parser for coefficient expressions.

Grammar (EBNF, also published in README.md):

    expr    := term { ("+" | "-") term }
    term    := unary { ("*" | "/") unary }
    unary   := "-" unary | power
    power   := primary [ "^" unary ]
    primary := NUMBER | "x" | "t" | "pi" | "e"
             | FUNC "(" expr ")" | "(" expr ")"
    FUNC    := "sin" | "cos" | "exp" | "ln" | "sqrt" | "tanh" | "sinh" | "cosh" | "atan"

``^`` is right-associative and binds tighter than unary minus, so ``-x^2`` is
``-(x^2)`` and ``2^-x`` is ``2^(-x)``.
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import List, Optional

from shockwkb.constants import FUNCTION_NAMES, VARIABLES
from shockwkb.exceptions import ParseError
from shockwkb.exprlang.nodes import BinaryOperator, BinOp, Const, Expr, Func, Neg, Var

logger = logging.getLogger(__name__)

NUMBER_RE = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
IDENT_RE = r"[A-Za-z_][A-Za-z_0-9]*"
TOKEN_RE = re.compile(
    rf"(?P<number>{NUMBER_RE})|(?P<ident>{IDENT_RE})|(?P<op>[+\-*/^])"
    rf"|(?P<lparen>\()|(?P<rparen>\))"
)
NAMED_CONSTANTS = {"pi": math.pi, "e": math.e}

_ADDITIVE = {"+": BinaryOperator.ADD, "-": BinaryOperator.SUB}
_MULTIPLICATIVE = {"*": BinaryOperator.MUL, "/": BinaryOperator.DIV}


@dataclass(frozen=True)
class Token:
    """Lexical token with its byte offset in the source."""

    kind: str
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    """
    Split expression text into tokens.

    Raises:
        ParseError: On a character outside the grammar
    """
    tokens = []
    position = 0
    while position < len(text):
        if text[position].isspace():
            position += 1
            continue
        match = TOKEN_RE.match(text, position)
        if match is None:
            raise ParseError(
                f"Unexpected character {text[position]!r}",
                offset=position,
                expected="number, identifier, operator or parenthesis",
            )
        tokens.append(Token(match.lastgroup, match.group(), position))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def _peek(self) -> Optional[Token]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _offset(self) -> int:
        token = self._peek()
        return token.offset if token is not None else len(self.text)

    def _fail(self, message: str, expected: str) -> ParseError:
        token = self._peek()
        if token is None:
            message = f"{message}: unexpected end of input"
        else:
            message = f"{message}: unexpected {token.text!r}"
        return ParseError(message, offset=self._offset(), expected=expected)

    def _expect_rparen(self, opened: Token) -> None:
        token = self._peek()
        if token is None or token.kind != "rparen":
            raise self._fail(f"Unbalanced parenthesis opened at offset {opened.offset}", "')'")
        self._advance()

    def parse(self) -> Expr:
        if not self.tokens:
            raise ParseError("Empty expression", offset=0, expected="expression")
        expr = self._expr()
        if self._peek() is not None:
            token = self._peek()
            if token.kind == "rparen":
                raise ParseError("Unbalanced parenthesis", offset=token.offset, expected="operator")
            raise self._fail("Trailing input", "operator or end of input")
        return expr

    def _expr(self) -> Expr:
        left = self._term()
        while (token := self._peek()) is not None and token.text in _ADDITIVE:
            self._advance()
            left = BinOp(_ADDITIVE[token.text], left, self._term())
        return left

    def _term(self) -> Expr:
        left = self._unary()
        while (token := self._peek()) is not None and token.text in _MULTIPLICATIVE:
            self._advance()
            left = BinOp(_MULTIPLICATIVE[token.text], left, self._unary())
        return left

    def _unary(self) -> Expr:
        token = self._peek()
        if token is not None and token.text == "-":
            self._advance()
            return Neg(self._unary())
        return self._power()

    def _power(self) -> Expr:
        base = self._primary()
        token = self._peek()
        if token is not None and token.text == "^":
            self._advance()
            return BinOp(BinaryOperator.POW, base, self._unary())
        return base

    def _primary(self) -> Expr:
        token = self._peek()
        if token is None:
            raise self._fail("Incomplete expression", "expression")
        if token.kind == "number":
            self._advance()
            return Const(float(token.text))
        if token.kind == "lparen":
            self._advance()
            inner = self._expr()
            self._expect_rparen(token)
            return inner
        if token.kind == "ident":
            return self._identifier()
        raise self._fail("Incomplete expression", "expression")

    def _identifier(self) -> Expr:
        token = self._advance()
        name = token.text
        if name in VARIABLES:
            return Var(name)
        if name in NAMED_CONSTANTS:
            return Const(NAMED_CONSTANTS[name], name=name)
        if name in FUNCTION_NAMES:
            opener = self._peek()
            if opener is None or opener.kind != "lparen":
                raise self._fail(f"Function {name!r} requires an argument", "'('")
            self._advance()
            arg = self._expr()
            self._expect_rparen(opener)
            return Func(name, arg)
        raise ParseError(
            f"Unknown identifier {name!r}",
            offset=token.offset,
            expected="x, t, pi, e or one of " + ", ".join(FUNCTION_NAMES),
        )


def parse(text: str) -> Expr:
    """
    Parse expression text into an AST.

    Args:
        text: Expression in the documented grammar, e.g. ``"(x^2+1)^2/(t^2+1)"``

    Returns:
        Expression tree honoring precedence and associativity

    Raises:
        ParseError: On malformed input, unknown identifiers or unbalanced parentheses
    """
    expr = _Parser(text).parse()
    logger.debug(f"Parsed expression: {text!r}")
    return expr

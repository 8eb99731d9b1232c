"""Recursive-descent parser for phi expressions.

Grammar (precedence ^ > unary - > * / > + -)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := atom ("^" ["-"] INTEGER)?
    atom     := NUMBER | "y" | "pi" | FUNC "(" expr ")" | "(" expr ")"
"""

import re
from dataclasses import dataclass
from typing import List

from phi.expression import (
    FUNCTIONS,
    PI,
    Add,
    Call,
    Const,
    Div,
    Expression,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    evaluate,
)
from utils.errors import ExpressionSyntaxError, UnknownIdentifier

_TOKEN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(src: str) -> List[Token]:
    """
    Splits source text into tokens, ending with an ``end`` token.

    Args:
        src: Expression text.

    Returns:
        The token list.
    """
    tokens: List[Token] = []
    position = 0
    while position < len(src):
        if src[position].isspace():
            position += 1
            continue
        match = _TOKEN.match(src, position)
        if match is None or match.end() == position:
            raise ExpressionSyntaxError(f"unexpected character {src[position]!r}", position)
        kind = match.lastgroup
        text = match.group(kind)
        tokens.append(Token(kind, text, match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


class Parser:
    """Builds an expression tree from a token stream."""

    def __init__(self, src: str):
        """
        Initializes the parser.

        Args:
            src: Non-empty ASCII expression text.
        """
        if not src.strip():
            raise ExpressionSyntaxError("empty expression", 0)
        for offset, char in enumerate(src):
            if ord(char) > 127:
                raise ExpressionSyntaxError("non-ASCII character", offset)
        self.src = src
        self.tokens = tokenize(src)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def _expect(self, text: str) -> None:
        if not self._accept(text):
            raise ExpressionSyntaxError(f"expected '{text}'", self.current.offset)

    def parse(self) -> Expression:
        expr = self._expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"unexpected '{self.current.text}'", self.current.offset)
        return expr

    def _expr(self) -> Expression:
        node = self._term()
        while True:
            if self._accept("+"):
                node = Add(node, self._term())
            elif self._accept("-"):
                node = Sub(node, self._term())
            else:
                return node

    def _term(self) -> Expression:
        node = self._unary()
        while True:
            if self._accept("*"):
                node = Mul(node, self._unary())
            elif self._accept("/"):
                node = Div(node, self._unary())
            else:
                return node

    def _unary(self) -> Expression:
        if self._accept("-"):
            return Neg(self._unary())
        return self._power()

    def _power(self) -> Expression:
        base = self._atom()
        if not self._accept("^"):
            return base
        negative = self._accept("-")
        token = self.current
        if token.kind != "number" or not token.text.isdigit():
            raise ExpressionSyntaxError("integer exponent expected", token.offset)
        self._advance()
        exponent = int(token.text)
        return Pow(base, -exponent if negative else exponent)

    def _atom(self) -> Expression:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Const(float(token.text))
        if token.kind == "ident":
            self._advance()
            if token.text == "y":
                return Var()
            if token.text == "pi":
                return PI
            if token.text in FUNCTIONS:
                self._expect("(")
                argument = self._expr()
                self._expect(")")
                return Call(token.text, argument)
            raise UnknownIdentifier(token.text, token.offset)
        if self._accept("("):
            node = self._expr()
            self._expect(")")
            return node
        if token.kind == "end":
            raise ExpressionSyntaxError("unexpected end of expression", token.offset)
        raise ExpressionSyntaxError(f"unexpected '{token.text}'", token.offset)


def parse_phi(src: str) -> Expression:
    """
    Parses a phi expression.

    Args:
        src: Expression text in the variable y.

    Returns:
        The expression tree.

    Raises:
        ExpressionSyntaxError: With the offset of the offending character.
        UnknownIdentifier: For names outside y, pi and the function set.
    """
    return Parser(src).parse()


def parse_constant(src: str) -> float:
    """Evaluates a constant expression such as ``pi/2`` or ``1/6``."""
    expr = parse_phi(src)
    if not expr.is_constant:
        raise ExpressionSyntaxError("constant expression expected", 0)
    return float(evaluate(expr, 0.0))

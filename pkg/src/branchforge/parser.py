"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INTEGER)?
    atom   := NUMBER | 'x' | 'y' | 'lambda' | 'l' | '(' expr ')'

Division is only allowed by nonzero constants, so ``1/3*y`` is accepted but
``y/x`` is not.  Exponents must be nonnegative integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import LAM, Poly, X, Y
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([A-Za-z_]\w*))")
_VARIABLES = {"x": X, "y": Y, "l": LAM, "lambda": LAM}


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Neg, BinOp, Pow]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("op", m.group(2), start))
        else:
            tokens.append(("name", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, *ops: str) -> str | None:
        kind, val, _ = self.peek()
        if kind == "op" and val in ops:
            self.i += 1
            return val
        return None

    def parse(self) -> Expr:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while (op := self.accept("+", "-")) is not None:
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while (op := self.accept("*", "/")) is not None:
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.accept("-") is not None:
            return Neg(self.unary())
        if self.accept("+") is not None:
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^", "**") is not None:
            kind, val, pos = self.take()
            if kind == "op" and val == "-":
                raise ParseError("negative exponent", pos)
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer literal", pos)
            return Pow(base, int(val))
        return base

    def atom(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(Fraction(int(val)))
        if kind == "name":
            if val not in _VARIABLES:
                raise ParseError(f"unknown variable {val!r}", pos)
            return Var("l" if val == "lambda" else val)
        if kind == "op" and val == "(":
            node = self.expr()
            k2, v2, p2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ParseError("expected ')'", p2)
            return node
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected {val!r}", pos)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


def evaluate(node: Expr) -> Poly:
    if isinstance(node, Num):
        return Poly.constant(node.value)
    if isinstance(node, Var):
        return _VARIABLES[node.name]
    if isinstance(node, Neg):
        return -evaluate(node.operand)
    if isinstance(node, Pow):
        return evaluate(node.base) ** node.exponent
    left, right = evaluate(node.left), evaluate(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if not right.is_constant() or right.is_zero():
        raise ParseError("division is only allowed by a nonzero constant")
    return left / right.constant_value()


def parse(text: str) -> Poly:
    """Parse an expression in x, y and lambda (alias l) into an exact polynomial."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    return evaluate(parse_expr(text))

"""Polynomial expression grammar.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*      division only by constants
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"

NAME is a declared variable, ``i`` or ``zeta<N>``.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .cyclotomic import DEFAULT_CONDUCTOR, CyclotomicNumber
from .errors import ParseError
from .poly import LocalPolynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_ZETA = re.compile(r"zeta(\d+)$")


class _Parser:
    def __init__(self, text, variables, conductor, line, col):
        self.text = text
        self.variables = tuple(variables)
        self.conductor = conductor
        self.line0 = line
        self.col0 = col
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.group(0).strip() == "" and m.end() >= len(text):
                break
            kind = "int" if m.group(1) else "name" if m.group(2) else "op"
            value = m.group(1) or m.group(2) or m.group(3)
            start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
            if kind == "op" and value not in "+-*/^()":
                self._fail(f"unexpected character {value!r}", start)
            self.tokens.append((kind, value, start))
            pos = m.end()
        self.k = 0

    def _where(self, offset):
        before = self.text[:offset]
        line = self.line0 + before.count("\n")
        col = (offset - before.rfind("\n")) if "\n" in before else self.col0 + offset
        return line, col

    def _fail(self, msg, offset=None):
        if offset is None:
            offset = self.tokens[self.k][2] if self.k < len(self.tokens) else len(self.text)
        raise ParseError(msg, *self._where(offset))

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            self._fail(f"expected {value!r}", pos)

    def parse(self) -> LocalPolynomial:
        if not self.tokens:
            self._fail("empty expression", 0)
        e = self.expr()
        if self.k != len(self.tokens):
            self._fail(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        left = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, pos = self.take()[1:]
            right = self.unary()
            if op == "*":
                left = left * right
            else:
                if not right.is_constant() or right.is_zero():
                    self._fail("division only by nonzero constants", pos)
                left = left * right.constant_term().inverse()
        return left

    def unary(self):
        kind, v, _ = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if v == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "int":
                self._fail("exponent must be a non-negative integer literal", pos)
            return base ** int(v)
        return base

    def atom(self):
        kind, v, pos = self.take()
        if kind == "int":
            return LocalPolynomial.constant(
                self.variables, CyclotomicNumber.from_rational(Fraction(int(v)), self.conductor)
            )
        if kind == "name":
            if v in self.variables:
                return LocalPolynomial.var(self.variables, v)
            if v == "i":
                return LocalPolynomial.constant(self.variables, CyclotomicNumber.i(self.conductor))
            m = _ZETA.match(v)
            if m:
                return LocalPolynomial.constant(
                    self.variables, CyclotomicNumber.zeta(int(m.group(1)), 1, self.conductor)
                )
            self._fail(f"unknown variable {v!r}", pos)
        if v == "(":
            e = self.expr()
            self.expect(")")
            return e
        if v is None:
            self._fail("unexpected end of expression", pos)
        self._fail(f"unexpected {v!r}", pos)


def parse_poly(
    text: str,
    variables: Sequence[str] = ("s", "t"),
    conductor: int = DEFAULT_CONDUCTOR,
    line: int = 1,
    col: int = 1,
) -> LocalPolynomial:
    """Parse an expression into a LocalPolynomial over ``variables``."""
    return _Parser(text, variables, conductor, line, col).parse()

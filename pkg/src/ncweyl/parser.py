"""Text DSL for operator expressions.

Grammar (informal)::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := atom ['^' exponent]
    atom     := number | symbol | generator | 'i'
              | 'comm' '(' expr ',' expr ')' | 'adj' '(' expr ')'
              | '(' expr ')'
    exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'

Numbers are exact integers; rationals are written with '/' (``3/4``),
which is ordinary division by a scalar.  Division requires a scalar
divisor and fractional exponents a scalar monomial base, matching the
coefficient ring.  Generator names come from the chosen algebra
(``xh1..ph2``, ``x1..p2``, ``ah1``/``ah2`` and ``adj(..)``, ``at1``/``at2``,
``a1``/``a2``); symbol names are the registered parameter alphabet.

``parse(render(e))`` returns ``e`` for every canonical expression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraTable,
    Expr,
    UnknownGenerator,
    adjoint,
    commutator,
    get_algebra,
    normal_order,
    render_expr,
)
from .coeff import CoeffError, Coefficient
from .operators import SYMBOLS

__all__ = ["ParseError", "parse", "render"]


class ParseError(Exception):
    """Syntax or semantic error with source location."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"\d+|[A-Za-z_][A-Za-z_0-9]*|[-+*/^(),]|\S")


def _tokenize(text: str):
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            line_start = pos + 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        lexeme = m.group()
        col = pos - line_start + 1
        if lexeme[0].isdigit():
            kind = "num"
        elif lexeme[0].isalpha() or lexeme[0] == "_":
            kind = "name"
        elif lexeme in "-+*/^(),":
            kind = "op"
        else:
            raise ParseError(f"unexpected character {lexeme!r}", line, col)
        tokens.append(_Token(kind, lexeme, line, col))
        pos = m.end()
    last_line = line
    last_col = len(text) - line_start + 1
    tokens.append(_Token("end", "", last_line, last_col))
    return tokens


class _Parser:
    def __init__(self, text: str, algebra: AlgebraTable):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.algebra = algebra
        self.symbols = set(SYMBOLS)

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.column)
        return tok

    def fail(self, message: str, tok: _Token):
        raise ParseError(message, tok.line, tok.column)

    # -- grammar -------------------------------------------------------

    def parse_expr(self) -> Expr:
        negate = False
        if self.peek().kind == "op" and self.peek().text == "-":
            self.next()
            negate = True
        value = self.parse_term()
        if negate:
            value = -value
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> Expr:
        value = self.parse_factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.next()
            rhs = self.parse_factor()
            if tok.text == "*":
                value = value * rhs
            else:
                if not rhs.is_scalar():
                    self.fail("division requires a scalar divisor", tok)
                try:
                    value = value * Expr.identity(
                        self.algebra, rhs.scalar_part().inverse()
                    )
                except CoeffError as exc:
                    self.fail(str(exc), tok)
        return value

    def parse_factor(self) -> Expr:
        value = self.parse_atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            tok = self.next()
            exponent = self.parse_exponent()
            value = self.apply_power(value, exponent, tok)
        return value

    def parse_exponent(self) -> Fraction:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.next()
            sign = 1
            if self.peek().kind == "op" and self.peek().text == "-":
                self.next()
                sign = -1
            num = self.next()
            if num.kind != "num":
                self.fail("expected an integer exponent", num)
            p = int(num.text)
            q = 1
            if self.peek().kind == "op" and self.peek().text == "/":
                self.next()
                den = self.next()
                if den.kind != "num":
                    self.fail("expected an integer after '/'", den)
                q = int(den.text)
            self.expect(")")
            return Fraction(sign * p, q)
        sign = 1
        if tok.kind == "op" and tok.text == "-":
            self.next()
            tok = self.peek()
            sign = -1
        num = self.next()
        if num.kind != "num":
            self.fail("expected an integer exponent", num)
        return Fraction(sign * int(num.text))

    def apply_power(self, value: Expr, exponent: Fraction, tok: _Token) -> Expr:
        if exponent.denominator == 1 and exponent >= 0:
            return value ** int(exponent)
        if not value.is_scalar():
            self.fail(
                "negative or fractional powers apply only to scalar factors", tok
            )
        try:
            return Expr.identity(self.algebra, value.scalar_part() ** exponent)
        except CoeffError as exc:
            self.fail(str(exc), tok)

    def parse_atom(self) -> Expr:
        tok = self.next()
        if tok.kind == "num":
            return Expr.identity(self.algebra, Coefficient.rational(int(tok.text)))
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if tok.kind == "name":
            return self.resolve_name(tok)
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)

    def resolve_name(self, tok: _Token) -> Expr:
        name = tok.text
        if name == "comm":
            self.expect("(")
            lhs = self.parse_expr()
            self.expect(",")
            rhs = self.parse_expr()
            self.expect(")")
            return commutator(lhs, rhs)
        if name == "adj":
            self.expect("(")
            inner = self.parse_expr()
            self.expect(")")
            return adjoint(inner)
        if name == "i":
            return Expr.identity(self.algebra, Coefficient.i())
        if name in self.algebra.generators:
            return Expr.generator(self.algebra, name)
        if name in self.symbols:
            return Expr.identity(self.algebra, Coefficient.symbol(name))
        raise UnknownGenerator(
            f"line {tok.line}, column {tok.column}: {name!r} is not a generator "
            f"of {self.algebra.name!r} or a known symbol"
        )


def parse(text: str, algebra, normalize: bool = True) -> Expr:
    """Parse a DSL expression into a normalized expression.

    ``algebra`` is a table or a registered algebra name; raises
    :class:`ParseError` with location, :class:`UnknownGenerator`, or
    :class:`~ncweyl.algebra.UnknownAlgebra`.  ``normalize=False`` keeps
    the words as written (useful to inspect what normal ordering does).
    """
    table = algebra if isinstance(algebra, AlgebraTable) else get_algebra(algebra)
    parser = _Parser(text, table)
    value = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(f"unexpected trailing {tail.text!r}", tail.line, tail.column)
    return normal_order(value) if normalize else value


def render(e: Expr) -> str:
    """Deterministic canonical text; inverse of :func:`parse`."""
    return render_expr(e)

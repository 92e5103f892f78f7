"""Text form of polynomials.

Grammar (UTF-8, whitespace insensitive, no implicit multiplication)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('-'|'+') factor | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

'/' is scalar division: the divisor must reduce to a nonzero constant.
The canonical printed form lists terms in descending graded-reverse-lex
order of the ring, with explicit '*' and '^', coefficient 1 suppressed and
no unary plus; parse(print(f)) == f.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError, UnknownVariable
from .orders import GREVLEX
from .poly import Polynomial, RingContext

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")

_INT, _NAME, _OP, _END = range(4)


def _tokenize(text: str):
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append((_INT, m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append((_NAME, m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append((_OP, ch, m.start(3)))
        pos = m.end()
    tokens.append((_END, "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.advance()
        if kind != _OP or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        f = self.expr()
        kind, val, pos = self.peek()
        if kind != _END:
            raise ParseError(f"unexpected trailing {val!r}", pos)
        return f

    def expr(self) -> Polynomial:
        f = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == _OP and val in "+-":
                self.advance()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self) -> Polynomial:
        f = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == _OP and val in "*/":
                self.advance()
                g = self.factor()
                if val == "*":
                    f = f * g
                else:
                    if not g.is_constant():
                        raise ParseError("division by a non-constant", pos)
                    c = g.constant_value()
                    if c == 0:
                        raise ParseError("division by zero", pos)
                    f = f / c
            else:
                return f

    def factor(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == _OP and val in "+-":
            self.advance()
            g = self.factor()
            return g if val == "+" else -g
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == _OP and val == "^":
            self.advance()
            ekind, eval_, epos = self.advance()
            if ekind != _INT:
                raise ParseError("exponent must be a non-negative integer", epos)
            return base ** int(eval_)
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.advance()
        if kind == _INT:
            return self.ring.constant(int(val))
        if kind == _NAME:
            if val not in self.ring.variables:
                raise UnknownVariable(val, pos)
            return self.ring.variable(val)
        if kind == _OP and val == "(":
            f = self.expr()
            self.expect_op(")")
            return f
        if kind == _END:
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_polynomial(text: str, ring: RingContext) -> Polynomial:
    """Parse ``text`` into canonical internal form over ``ring``."""
    return _Parser(text, ring).parse()


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: descending grevlex terms, explicit '*' and '^'."""
    if f.is_zero():
        return "0"
    names = f.ring.variables
    chunks: list[str] = []
    for mono, coeff in f.sorted_terms(GREVLEX):
        vars_part = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, mono)
            if e
        )
        mag = abs(coeff)
        if not vars_part:
            body = _format_coeff(mag)
        elif mag == 1:
            body = vars_part
        else:
            body = f"{_format_coeff(mag)}*{vars_part}"
        if not chunks:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(f"+{body}" if coeff > 0 else f"-{body}")
    return "".join(chunks)

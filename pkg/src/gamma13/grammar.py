"""Parsers for the textual exchange formats used across the package.

The accepted surface syntax:

* rationals        ``-14/9``
* field elements   ``1/2-3/4*sqrt(13)``
* scalar symbols   ``a2``, ``a3``, ``e`` with ``^`` (or ``**``) powers
* matrices         ``[[2,-1],[13,-6]]`` with field-element entries
* ring elements    sums ``coeff*[[...]] + ...`` where each coefficient is a
  scalar polynomial and a missing matrix factor means the identity matrix

Parsing is whitespace-tolerant and slightly more lenient than the printers
(e.g. a bare ``sqrt(13)`` is accepted); printers in the rest of the package
always emit strictly conformant text.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .exactnum import DEFAULT_D, QuadElem, ScalarPoly

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z][A-Za-z0-9]*|\*\*|[+\-*/^()\[\],])")

#: Matrix entries as a flat (top-left, top-right, bottom-left, bottom-right).
Entries = Tuple[QuadElem, QuadElem, QuadElem, QuadElem]


class GrammarError(ValueError):
    """Raised for any malformed input, with the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: List[Tuple[str, int]] = []
        i = 0
        while i < len(text):
            m = _TOKEN.match(text, i)
            if m is None:
                stripped = text[i:].lstrip()
                if not stripped:
                    break
                raise GrammarError(f"unexpected character {stripped[0]!r}",
                                   len(text) - len(stripped))
            self.toks.append((m.group(1), m.start(1)))
            i = m.end()
        self.idx = 0

    def peek(self) -> str:
        return self.toks[self.idx][0] if self.idx < len(self.toks) else ""

    def pos(self) -> int:
        if self.idx < len(self.toks):
            return self.toks[self.idx][1]
        return len(self.text)

    def next(self) -> str:
        if self.idx >= len(self.toks):
            raise GrammarError("unexpected end of input", len(self.text))
        tok, _ = self.toks[self.idx]
        self.idx += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.peek()
        if got != tok:
            raise GrammarError(f"expected {tok!r}, got {got!r}", self.pos())
        self.next()

    def expect_end(self) -> None:
        if self.idx != len(self.toks):
            raise GrammarError(f"trailing input {self.peek()!r}", self.pos())


def _parse_uint(ts: _Tokens) -> int:
    tok = ts.peek()
    if not tok.isdigit():
        raise GrammarError(f"expected digits, got {tok!r}", ts.pos())
    return int(ts.next())


def _parse_fraction(ts: _Tokens) -> Fraction:
    num = _parse_uint(ts)
    if ts.peek() == "/":
        ts.next()
        den = _parse_uint(ts)
        if den == 0:
            raise GrammarError("zero denominator", ts.pos())
        return Fraction(num, den)
    return Fraction(num)


def _parse_exponent(ts: _Tokens) -> int:
    if ts.peek() in ("^", "**"):
        ts.next()
        return _parse_uint(ts)
    return 1


def _scalar_factor(ts: _Tokens, D: int) -> ScalarPoly:
    tok = ts.peek()
    if tok == "(":
        ts.next()
        inner = _scalar_sum(ts, D)
        ts.expect(")")
        return inner ** _parse_exponent(ts)
    if tok.isdigit():
        return ScalarPoly.const(_parse_fraction(ts), D)
    if tok == "sqrt":
        ts.next()
        ts.expect("(")
        d = _parse_uint(ts)
        ts.expect(")")
        if d != D:
            raise GrammarError(f"sqrt({d}) does not belong to Q(sqrt({D}))",
                               ts.pos())
        return ScalarPoly.const(QuadElem.sqrt_d(D), D)
    if tok == "a2":
        ts.next()
        return ScalarPoly.alpha2(D) ** _parse_exponent(ts)
    if tok == "a3":
        ts.next()
        return ScalarPoly.alpha3(D) ** _parse_exponent(ts)
    if tok == "e":
        ts.next()
        return ScalarPoly.eps(D) ** _parse_exponent(ts)
    raise GrammarError(f"expected a factor, got {tok!r}", ts.pos())


def _scalar_term(ts: _Tokens, D: int) -> ScalarPoly:
    poly = _scalar_factor(ts, D)
    while ts.peek() == "*":
        ts.next()
        poly = poly * _scalar_factor(ts, D)
    return poly


def _leading_sign(ts: _Tokens) -> int:
    if ts.peek() == "-":
        ts.next()
        return -1
    if ts.peek() == "+":
        ts.next()
    return 1


def _scalar_sum(ts: _Tokens, D: int) -> ScalarPoly:
    sign = _leading_sign(ts)
    acc = _scalar_term(ts, D)
    if sign < 0:
        acc = -acc
    while ts.peek() in ("+", "-"):
        op = ts.next()
        term = _scalar_term(ts, D)
        acc = acc + term if op == "+" else acc - term
    return acc


def _quad_sum(ts: _Tokens, D: int) -> QuadElem:
    start = ts.pos()
    value = _scalar_sum(ts, D).as_const()
    if value is None:
        raise GrammarError("expected a field constant, found symbols", start)
    return value


def _matrix(ts: _Tokens, D: int) -> Entries:
    ts.expect("[")
    rows = []
    for which in range(2):
        ts.expect("[")
        left = _quad_sum(ts, D)
        ts.expect(",")
        right = _quad_sum(ts, D)
        ts.expect("]")
        rows.extend((left, right))
        if which == 0:
            ts.expect(",")
    ts.expect("]")
    return tuple(rows)  # type: ignore[return-value]


def parse_rational(text: str) -> Fraction:
    ts = _Tokens(text)
    sign = _leading_sign(ts)
    value = _parse_fraction(ts)
    ts.expect_end()
    return sign * value


def parse_quad(text: str, D: int = DEFAULT_D) -> QuadElem:
    ts = _Tokens(text)
    value = _quad_sum(ts, D)
    ts.expect_end()
    return value


def parse_scalar_poly(text: str, D: int = DEFAULT_D) -> ScalarPoly:
    ts = _Tokens(text)
    value = _scalar_sum(ts, D)
    ts.expect_end()
    return value


def parse_matrix_entries(text: str, D: int = DEFAULT_D) -> Entries:
    ts = _Tokens(text)
    entries = _matrix(ts, D)
    ts.expect_end()
    return entries


def _ring_term(ts: _Tokens, D: int) -> Tuple[ScalarPoly, Entries]:
    identity = (QuadElem.of(1, D), QuadElem.of(0, D),
                QuadElem.of(0, D), QuadElem.of(1, D))
    if ts.peek() == "[":
        return ScalarPoly.const(1, D), _matrix(ts, D)
    coeff = _scalar_factor(ts, D)
    while ts.peek() == "*":
        ts.next()
        if ts.peek() == "[":
            return coeff, _matrix(ts, D)
        coeff = coeff * _scalar_factor(ts, D)
    return coeff, identity


def parse_ring_terms(text: str, D: int = DEFAULT_D) -> List[Tuple[ScalarPoly, Entries]]:
    """Parse a sum of ``coeff*matrix`` terms (bare coefficients act on the
    identity matrix).  Returns the raw term list without combining."""
    ts = _Tokens(text)
    out = []
    sign = _leading_sign(ts)
    coeff, entries = _ring_term(ts, D)
    out.append((coeff if sign > 0 else -coeff, entries))
    while ts.peek() in ("+", "-"):
        op = ts.next()
        coeff, entries = _ring_term(ts, D)
        out.append((coeff if op == "+" else -coeff, entries))
    ts.expect_end()
    return out

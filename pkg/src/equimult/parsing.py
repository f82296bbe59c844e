"""Polynomial expression parsing and canonical printing.

The expression grammar is the one used by session scripts: ``+ - * ^``,
integer literals, variable names, and parentheses.  ``/`` between integer
literals is tolerated so that printed rational constants round-trip.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SessionParseError


class _Scanner:
    def __init__(self, text: str, line: int = None):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, message: str):
        raise SessionParseError(message, line=self.line, column=self.pos + 1)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_name(self):
        ch = self.peek()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            self.error(f"expected a name, found {ch!r}")
        return self.text[start:self.pos]

    def take_int(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])


def parse_polynomial(ring, text: str, line: int = None):
    """Parse ``text`` into a polynomial of ``ring``."""
    sc = _Scanner(text, line)
    poly = _parse_sum(ring, sc)
    if sc.peek():
        sc.error(f"unexpected {sc.peek()!r}")
    return poly


def _parse_sum(ring, sc):
    ch = sc.peek()
    negate = False
    if ch in "+-":
        sc.pos += 1
        negate = ch == "-"
    result = _parse_product(ring, sc)
    if negate:
        result = -result
    while True:
        ch = sc.peek()
        if ch == "+":
            sc.pos += 1
            result = result + _parse_product(ring, sc)
        elif ch == "-":
            sc.pos += 1
            result = result - _parse_product(ring, sc)
        else:
            return result


def _parse_product(ring, sc):
    result = _parse_power(ring, sc)
    while True:
        ch = sc.peek()
        if ch == "*":
            sc.pos += 1
            result = result * _parse_power(ring, sc)
        elif ch == "/":
            sc.pos += 1
            divisor = _parse_power(ring, sc)
            c = divisor.constant_coefficient()
            if divisor.total_degree() > 0 or c == 0:
                sc.error("division only by nonzero constants")
            result = result.scale(ring.field.inv(c))
        else:
            return result


def _parse_power(ring, sc):
    base = _parse_atom(ring, sc)
    if sc.peek() == "^":
        sc.pos += 1
        if sc.peek() == "-":
            sc.error("negative exponents are not allowed")
        return base ** sc.take_int()
    return base


def _parse_atom(ring, sc):
    ch = sc.peek()
    if ch == "(":
        sc.pos += 1
        inner = _parse_sum(ring, sc)
        if sc.peek() != ")":
            sc.error("expected ')'")
        sc.pos += 1
        return inner
    if ch == "-":
        sc.pos += 1
        return -_parse_atom(ring, sc)
    if ch.isdigit():
        return ring.from_int(sc.take_int())
    if ch.isalpha() or ch == "_":
        name = sc.take_name()
        if name not in ring.var_index:
            sc.error(f"unknown variable {name!r}")
        return ring.var(name)
    sc.error(f"unexpected {ch!r}")


def format_coefficient(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_polynomial(poly) -> str:
    if poly.is_zero():
        return "0"
    ring = poly.ring
    parts = []
    for _, exp, coeff in poly.terms:
        factors = [f"{v}^{e}" if e > 1 else v
                   for v, e in zip(ring.variables, exp) if e]
        mono = "*".join(factors)
        cs = format_coefficient(coeff)
        negative = cs.startswith("-")
        if negative:
            cs = cs[1:]
        if mono and cs == "1":
            body = mono
        elif mono:
            body = f"{cs}*{mono}" if "/" not in cs else f"({cs})*{mono}"
        else:
            body = cs if "/" not in cs else f"({cs})"
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)

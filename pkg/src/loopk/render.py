"""Canonical text rendering and a tiny expression parser.

Grammar (version 1) for polynomial input::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" exponent)?
    atom   := INTEGER | NAME | "(" expr ")"
    exponent := ["-"] INTEGER | "(" ["-"] INTEGER ")"

``**`` is accepted for ``^`` and ``·`` for ``*``.  Division is exact: by a
rational constant or by a polynomial that divides the numerator.  Series text
may end with ``+ O(q^K)``, which fixes the truncation order at ``K - 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .laurent import LaurentPoly
from .qseries import QLaurentSeries

GRAMMAR_VERSION = 1

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()·]))")


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def render_monomial(variables: Sequence[str], exponent: Sequence[int]) -> str:
    parts = []
    for v, e in zip(variables, exponent):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def render_poly(p: LaurentPoly) -> str:
    """Terms in descending lexicographic exponent order, e.g. ``u^2 + 2 + u^-2``."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.terms():
        mono = render_monomial(p.variables, e)
        if not mono:
            s = _format_coeff(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{_format_coeff(c)}*{mono}"
        pieces.append(s)
    out = pieces[0]
    for s in pieces[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


def _needs_parens(s: str) -> bool:
    return s.startswith("-") or " " in s or "/" in s


def render_series(s: QLaurentSeries, show_order: bool = False) -> str:
    """Terms by increasing degree; compound coefficients are parenthesized.

    ``1 - q^2*L`` renders as ``1 + (-L)*q^2``.
    """
    pieces = []
    for d, c in s.terms():
        cs = render_poly(c)
        if d == 0:
            pieces.append(f"({cs})" if _needs_parens(cs) else cs)
            continue
        qs = s.var if d == 1 else f"{s.var}^{d}"
        if cs == "1":
            pieces.append(qs)
        else:
            pieces.append(f"({cs})*{qs}" if _needs_parens(cs) else f"{cs}*{qs}")
    text = " + ".join(pieces) if pieces else "0"
    if show_order:
        text += f" + O({s.var}^{s.order + 1})"
    return text


def render_compact(p: LaurentPoly) -> str:
    return render_poly(p).replace(" ", "")


# parsing ------------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        if m.group(1):
            tokens.append(("int", m.group(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            op = m.group(3)
            op = {"**": "^", "·": "*"}.get(op, op)
            tokens.append(("op", op))
    return tokens


def identifiers(text: str) -> list[str]:
    """Variable names occurring in ``text`` in order of first appearance."""
    seen = []
    for kind, val in _tokenize(text):
        if kind == "name" and val not in seen:
            seen.append(val)
    return seen


class _Parser:
    def __init__(self, tokens, variables):
        self.tokens = tokens
        self.i = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise InputError(f"expected {value or 'token'}, found {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self) -> LaurentPoly:
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> LaurentPoly:
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            elif rhs.is_constant():
                c = rhs.constant_term()
                if c == 0:
                    raise InputError("division by zero")
                acc = acc * (1 / Fraction(c))
            else:
                acc = acc.exact_divide(rhs)
        return acc

    def unary(self) -> LaurentPoly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def exponent(self) -> int:
        paren = self.peek() == ("op", "(")
        if paren:
            self.take()
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        kind, val = self.take()
        if kind != "int":
            raise InputError(f"exponent must be an integer, found {val!r}")
        if paren:
            self.take(")")
        return sign * int(val)

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            base = base ** self.exponent()
        return base

    def atom(self) -> LaurentPoly:
        kind, val = self.take()
        if kind == "int":
            return LaurentPoly.constant(self.variables, int(val))
        if kind == "name":
            if val not in self.variables:
                raise InputError(f"unknown variable {val!r}; expected one of {self.variables}")
            return LaurentPoly.gen(self.variables, val)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise InputError(f"unexpected {val!r}")


def parse_poly(text: str, variables: Sequence[str] | None = None) -> LaurentPoly:
    """Parse an expression into a :class:`LaurentPoly` over ``variables``.

    When ``variables`` is omitted they are the identifiers of ``text`` in
    order of appearance.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise InputError("empty expression")
    if variables is None:
        variables = identifiers(text)
    p = _Parser(tokens, variables)
    out = p.expr()
    if p.i != len(tokens):
        raise InputError(f"trailing input in {text!r}")
    return out


_ORDER_TERM = re.compile(r"\+\s*O\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(-?\d+))?\s*\)\s*$")


def parse_series(
    text: str, variables: Sequence[str], order: int | None = None, var: str = "q"
) -> QLaurentSeries:
    """Parse series text; a trailing ``O(q^K)`` overrides ``order``."""
    text = text.strip()
    m = _ORDER_TERM.search(text)
    if m:
        if m.group(1) != var:
            raise InputError(f"order term in {m.group(1)!r}, expected {var!r}")
        order = int(m.group(2) or 1) - 1
        text = text[: m.start()].strip() or "0"
    if order is None:
        raise InputError("series text needs an O(...) term or an explicit order")
    poly = parse_poly(text, tuple(variables) + (var,))
    return QLaurentSeries.from_poly(poly, var, order)

"""Recursive-descent parser for polynomial and vector-field expressions.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := atom (('^' | '**') INT)?
    atom    := NUMBER | VAR | 'd/d' VAR | '(' expr ')'

``d/d<var>`` tokens are only accepted by :func:`parse_field`; the result must
be linear in them.  Division is only allowed by nonzero constants.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly, Ring


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}" + (f" in {text!r}" if text else ""))


_TOKEN = re.compile(
    r"\s*(?:(?P<dvar>d/d(?P<dname>[A-Za-z][A-Za-z0-9_]*))"
    r"|(?P<num>\d+(?:\.\d+)?)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup) if m.lastgroup != "dname" else m.start("dvar")
        if m.group("dvar"):
            toks.append(("dvar", m.group("dname"), m.start("dvar")))
        elif m.group("num"):
            toks.append(("num", m.group("num"), start))
        elif m.group("name"):
            toks.append(("name", m.group("name"), start))
        else:
            toks.append(("op", m.group("op"), start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Vec:
    """Formal combination sum(coeff_i * d/dx_i) used while parsing fields."""

    __slots__ = ("c",)

    def __init__(self, c: dict):
        self.c = c


class _Parser:
    def __init__(self, text: str, ring: Ring, allow_fields: bool):
        self.text = text
        self.ring = ring
        self.allow_fields = allow_fields
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return v

    # value algebra: Poly | _Vec
    def _add(self, a, b, sign, tok):
        if isinstance(a, Poly) and isinstance(b, Poly):
            return a + b if sign > 0 else a - b
        if isinstance(a, Poly) and not a:
            a = _Vec({})
        if isinstance(b, Poly) and not b:
            b = _Vec({})
        if isinstance(a, _Vec) and isinstance(b, _Vec):
            d = dict(a.c)
            for k, v in b.c.items():
                d[k] = d.get(k, self.ring.zero()) + (v if sign > 0 else -v)
            return _Vec(d)
        self.error("cannot add a polynomial and a vector field", tok)

    def _mul(self, a, b, tok):
        if isinstance(a, Poly) and isinstance(b, Poly):
            return a * b
        if isinstance(a, _Vec) and isinstance(b, _Vec):
            self.error("product of two d/d tokens", tok)
        if isinstance(a, _Vec):
            a, b = b, a
        return _Vec({k: a * v for k, v in b.c.items()})

    def expr(self):
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            tok = self.take()
            w = self.term()
            v = self._add(v, w, 1 if tok[1] == "+" else -1, tok)
        return v

    def term(self):
        v = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            w = self.unary()
            if tok[1] == "*":
                v = self._mul(v, w, tok)
            else:
                if not isinstance(w, Poly) or not w.is_constant():
                    self.error("division only by nonzero constants", tok)
                c = w.constant_value()
                if not c:
                    self.error("division by zero", tok)
                v = self._mul(v, self.ring.const(1 / c), tok)
        return v

    def unary(self):
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return self._mul(self.ring.const(-1), self.unary(), tok)
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        tok = self.peek()
        if tok[:2] in (("op", "^"), ("op", "**")):
            self.take()
            e = self.take()
            if e[0] != "num" or "." in e[1]:
                self.error("exponent must be a nonnegative integer", e)
            if isinstance(v, _Vec):
                self.error("cannot raise a vector field to a power", tok)
            v = v ** int(e[1])
        return v

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return self.ring.const(Fraction(val))
        if kind == "name":
            if val not in self.ring.vars:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            return self.ring.gen(val)
        if kind == "dvar":
            if not self.allow_fields:
                raise ParseError("d/d token not allowed in a polynomial", pos, self.text)
            if val not in self.ring.vars:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            return _Vec({self.ring.index(val): self.ring.one()})
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return v
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input",
                         pos, self.text)


def parse_poly(text: str, ring: Ring) -> Poly:
    v = _Parser(text, ring, allow_fields=False).parse()
    return v


def parse_field_coeffs(text: str, ring: Ring) -> list:
    """Parse ``p1*d/dx1 + ...`` into the list of n coefficient Polys."""
    v = _Parser(text, ring, allow_fields=True).parse()
    if isinstance(v, Poly):
        if v:
            raise ParseError("expected a vector field (no d/d tokens found)", 0, text)
        v = _Vec({})
    coeffs = [ring.zero()] * ring.n
    for k, c in v.c.items():
        coeffs[k] = c
    return coeffs

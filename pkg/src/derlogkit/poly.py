"""Exact multivariate polynomials over the rationals.

Monomials are packed into a single Python int.  The low ``n*BITS`` bits hold
the exponent vector (one field per variable, each with a guard bit), the next
``n*BITS`` bits hold the exponent vector transformed by a nonnegative weight
matrix that realises the monomial order, and anything above that is a module
position.  Because both parts are linear in the exponents, multiplying
monomials is integer addition and comparing them in the monomial order is
integer comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence, Union

BITS = 16
FIELD = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1

Coeff = Union[int, Fraction]

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class RingMismatch(ValueError):
    pass


def _norm_coeff(c) -> Coeff:
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[vars] with a monomial order.

    ``order`` is ``"degrevlex"``, ``"lex"`` or ``"block"``; the block order
    eliminates the first ``block`` variables (degrevlex inside each block).
    """

    vars: tuple
    order: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise ValueError("a ring needs at least one variable")
        for v in self.vars:
            if not isinstance(v, str) or not _VAR_RE.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be unique")
        if self.order not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.order!r}")
        if self.order == "block":
            if not 0 < self.block < len(self.vars):
                raise ValueError("block order needs 0 < block < number of variables")
        elif self.block:
            object.__setattr__(self, "block", 0)

    @property
    def n(self) -> int:
        return len(self.vars)

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}") from None

    def with_order(self, order: str, block: int = 0) -> "Ring":
        return Ring(self.vars, order, block)

    def __str__(self):
        s = f"Q[{','.join(self.vars)}]"
        if self.order == "block":
            return f"{s} (block {self.block})"
        return s if self.order == "degrevlex" else f"{s} ({self.order})"

    # -- packing ---------------------------------------------------------

    @cached_property
    def _weights(self) -> tuple:
        n = self.n
        if self.order == "lex":
            rows = [[int(i == j) for i in range(n)] for j in range(n)]
        elif self.order == "degrevlex":
            rows = [[int(i < n - j) for i in range(n)] for j in range(n)]
        else:
            k = self.block
            rows = [[int(i < k - j) for i in range(n)] for j in range(k)]
            m = n - k
            rows += [[int(k <= i < n - j) for i in range(n)] for j in range(m)]
        # rows[0] is the most significant field of the order key
        coeffs = []
        for i in range(n):
            c = 0
            for j, row in enumerate(rows):
                if row[i]:
                    c |= 1 << (BITS * (n - 1 - j))
            coeffs.append(c << (n * BITS))
        return tuple(coeffs)

    @cached_property
    def pos_shift(self) -> int:
        return 2 * self.n * BITS

    @cached_property
    def exp_mask(self) -> int:
        return (1 << (self.n * BITS)) - 1

    @cached_property
    def guard(self) -> int:
        g = 0
        for i in range(self.n):
            g |= 1 << (BITS * i + BITS - 1)
        return g

    def pack(self, exps: Sequence[int], pos: int = 0) -> int:
        m = 0
        w = self._weights
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_EXP:
                raise OverflowError(f"exponent {e} out of range")
            if e:
                m += e * w[i] + (e << (BITS * i))
        return m | (pos << self.pos_shift)

    def unpack(self, m: int) -> tuple:
        return tuple((m >> (BITS * i)) & FIELD for i in range(self.n))

    def mono_degree(self, m: int) -> int:
        return sum(self.unpack(m))

    def divides(self, a: int, b: int) -> bool:
        if (a >> self.pos_shift) != (b >> self.pos_shift):
            return False
        mask = self.exp_mask
        return not (((b & mask) - (a & mask)) & self.guard)

    def mono_lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([max(x, y) for x, y in zip(ea, eb)], a >> self.pos_shift)

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.unpack(a), self.unpack(b)))

    # -- constructors ----------------------------------------------------

    def gen(self, var: Union[str, int]) -> "Poly":
        i = var if isinstance(var, int) else self.index(var)
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {self.pack(e): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.n)]

    def const(self, c) -> "Poly":
        c = _norm_coeff(c)
        return Poly(self, {0: c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: 1})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        coeff = _norm_coeff(coeff)
        return Poly(self, {self.pack(exps): coeff} if coeff else {})

    def from_terms(self, terms: Iterable) -> "Poly":
        d: dict = {}
        for exps, c in terms:
            m = self.pack(exps)
            d[m] = d.get(m, 0) + c
        return Poly(self, {m: _norm_coeff(c) for m, c in d.items() if c})

    def parse(self, text: str) -> "Poly":
        from .parse import parse_poly

        return parse_poly(text, self)


def _check_ring(a: "Poly", b: "Poly"):
    if a.ring != b.ring:
        raise RingMismatch(f"ring mismatch: {a.ring} vs {b.ring}")


class Poly:
    """Immutable polynomial; ``_t`` maps packed monomials to nonzero coefficients."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self._t = terms
        self._hash = None

    # -- inspection ------------------------------------------------------

    def terms(self) -> list:
        """Terms as ``(exponents, coefficient)`` sorted descending in the ring order."""
        return [(self.ring.unpack(m), self._t[m]) for m in sorted(self._t, reverse=True)]

    def __iter__(self) -> Iterator:
        return iter(self.terms())

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> Fraction:
        return Fraction(self._t.get(0, 0))

    @property
    def lm(self) -> int:
        return max(self._t)

    def leading_exponents(self) -> tuple:
        return self.ring.unpack(self.lm)

    def leading_coeff(self) -> Coeff:
        return self._t[self.lm] if self._t else 0

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._t:
            return -1
        u = self.ring.unpack
        return max(sum(u(m)) for m in self._t)

    def weighted_degrees(self, weights: Sequence) -> set:
        u = self.ring.unpack
        return {sum(w * e for w, e in zip(weights, u(m))) for m in self._t}

    def is_homogeneous(self, weights: Sequence | None = None) -> bool:
        if weights is None:
            weights = (1,) * self.ring.n
        return len(self.weighted_degrees(weights)) <= 1

    def variables(self) -> set:
        out = set()
        for m in self._t:
            out.update(i for i, e in enumerate(self.ring.unpack(m)) if e)
        return out

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            _check_ring(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._t)
        for m, c in other._t.items():
            v = d.get(m, 0) + c
            if v:
                d[m] = _norm_coeff(v) if isinstance(v, Fraction) else v
            else:
                del d[m]
        return Poly(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _norm_coeff(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {m: _norm_coeff(v * c) for m, v in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._t or not other._t:
            return self.ring.zero()
        if self.degree() + other.degree() > MAX_EXP:
            raise OverflowError("degree too large")
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        d: dict = {}
        get = d.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                k = ma + mb
                d[k] = get(k, 0) + ca * cb
        return Poly(self.ring, {m: _norm_coeff(c) if isinstance(c, Fraction) else c
                                for m, c in d.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q, r = self.divmod_exact(other)
        if r:
            raise ValueError("polynomial division is not exact")
        return q

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, m: int, c: Coeff = 1) -> "Poly":
        return Poly(self.ring, {k + m: _norm_coeff(v * c) for k, v in self._t.items()})

    def divmod_exact(self, g: "Poly"):
        """Division by a single polynomial in the ring order; returns (q, r)."""
        if not g:
            raise ZeroDivisionError("division by zero polynomial")
        ring = self.ring
        lm, lc = g.lm, Fraction(g._t[g.lm])
        f = {m: Fraction(c) for m, c in self._t.items()}
        q: dict = {}
        r: dict = {}
        while f:
            m = max(f)
            c = f.pop(m)
            if ring.divides(lm, m):
                t = m - lm
                s = c / lc
                q[t] = s
                for mg, cg in g._t.items():
                    if mg == lm:
                        continue
                    k = mg + t
                    v = f.get(k, 0) - s * cg
                    if v:
                        f[k] = v
                    else:
                        f.pop(k, None)
            else:
                r[m] = c
        return (Poly(ring, {m: _norm_coeff(c) for m, c in q.items()}),
                Poly(ring, {m: _norm_coeff(c) for m, c in r.items()}))

    def monic(self) -> "Poly":
        if not self._t:
            return self
        return self * (Fraction(1) / Fraction(self.leading_coeff()))

    def primitive(self) -> "Poly":
        """Scale to integer coefficients with content 1 and positive leading coefficient."""
        if not self._t:
            return self
        den = 1
        for c in self._t.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        ints = {m: int(c * den) for m, c in self._t.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        if ints[max(ints)] < 0:
            g = -g
        return Poly(self.ring, {m: c // g for m, c in ints.items()})

    def diff(self, i: Union[int, str]) -> "Poly":
        """Formal partial derivative with respect to variable ``i`` (index or name)."""
        ring = self.ring
        if isinstance(i, str):
            i = ring.index(i)
        if not 0 <= i < ring.n:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * ring.n
        e[i] = 1
        step = ring.pack(e)
        shift = BITS * i
        d = {}
        for m, c in self._t.items():
            k = (m >> shift) & FIELD
            if k:
                d[m - step] = c * k
        return Poly(ring, d)

    def __call__(self, point) -> Fraction:
        return evaluate(self, point)

    def subs(self, values: dict) -> "Poly":
        """Substitute Polys (or constants) for some variables, by index or name."""
        ring = self.ring
        sub = {}
        for k, v in values.items():
            i = ring.index(k) if isinstance(k, str) else k
            sub[i] = v if isinstance(v, Poly) else ring.const(v)
        out = ring.zero()
        for exps, c in self.terms():
            t = ring.const(c)
            rest = list(exps)
            for i, p in sub.items():
                if rest[i]:
                    t = t * p ** rest[i]
                    rest[i] = 0
            out = out + t * ring.monomial(rest)
        return out

    def to_ring(self, ring: Ring, var_map: Sequence[int] | None = None) -> "Poly":
        """Re-embed into ``ring``; ``var_map[i]`` is the target index of variable i."""
        if var_map is None:
            var_map = [ring.index(v) for v in self.ring.vars]
        d = {}
        u = self.ring.unpack
        for m, c in self._t.items():
            e = [0] * ring.n
            for i, x in enumerate(u(m)):
                if x:
                    e[var_map[i]] = x
            d[ring.pack(e)] = c
        return Poly(ring, d)

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        return format_poly(self)


def format_monomial(ring: Ring, exps: Sequence[int]) -> str:
    parts = []
    for v, e in zip(ring.vars, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _format_coeff(c: Coeff) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Poly) -> str:
    if not f._t:
        return "0"
    out = []
    for exps, c in f.terms():
        mono = format_monomial(f.ring, exps)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


@dataclass(frozen=True)
class Point:
    ring: Ring
    coords: tuple = field(default=())

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.ring.n:
            raise ValueError(f"point needs {self.ring.n} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def origin(cls, ring: Ring) -> "Point":
        return cls(ring, (0,) * ring.n)


def evaluate(f: Poly, p: Union[Point, Sequence]) -> Fraction:
    if isinstance(p, Point):
        if p.ring != f.ring:
            raise RingMismatch("point and polynomial live in different rings")
        coords = p.coords
    else:
        coords = tuple(Fraction(c) for c in p)
        if len(coords) != f.ring.n:
            raise ValueError("wrong number of coordinates")
    total = Fraction(0)
    u = f.ring.unpack
    for m, c in f._t.items():
        t = Fraction(c)
        for x, e in zip(coords, u(m)):
            if e:
                t *= x ** e
                if not t:
                    break
        total += t
    return total


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    _check_ring(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_pow(a: Poly, k: int) -> Poly:
    return a ** k


def partial_derivative(f: Poly, i: Union[int, str]) -> Poly:
    """d f / d x_i with ``i`` counted from 1 (or a variable name).

    ``Poly.diff`` is the 0-based variant used internally.
    """
    if isinstance(i, str):
        return f.diff(i)
    if not 1 <= i <= f.ring.n:
        raise IndexError(f"variable index {i} out of range 1..{f.ring.n}")
    return f.diff(i - 1)

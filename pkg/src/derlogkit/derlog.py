"""Logarithmic vector fields, Saito matrices and Fitting ideals."""

from __future__ import annotations

import warnings
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .groebner import FreeVec, GB, groebner_basis, is_member
from .ideals import (Ideal, PolyMat, _dedupe, is_reduced, membership, minors_ideal)
from .parse import parse_field_coeffs
from .poly import Point, Poly, Ring, RingMismatch, evaluate
from .weights import find_weights, rank as _rank


class VField:
    """Vector field sum_i coeffs[i] * d/dx_i with polynomial coefficients."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: Sequence[Poly]):
        coeffs = tuple(coeffs)
        if len(coeffs) != ring.n:
            raise ValueError(f"a field on {ring} needs {ring.n} coefficients")
        for c in coeffs:
            if c.ring != ring:
                raise RingMismatch("coefficient ring mismatch")
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def parse(cls, text: str, ring: Ring) -> "VField":
        return cls(ring, parse_field_coeffs(text, ring))

    @classmethod
    def partial(cls, ring: Ring, i) -> "VField":
        i = ring.index(i) if isinstance(i, str) else i
        return cls(ring, [ring.one() if j == i else ring.zero() for j in range(ring.n)])

    def __call__(self, f: Poly) -> Poly:
        return apply_field(self, f)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "VField") -> "VField":
        _same(self, other)
        return VField(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "VField") -> "VField":
        _same(self, other)
        return VField(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return VField(self.ring, [-a for a in self.coeffs])

    def __mul__(self, g):
        return VField(self.ring, [a * g for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VField):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def to_vec(self) -> FreeVec:
        return FreeVec(self.ring, self.coeffs)

    def degree(self) -> int:
        return max(c.degree() for c in self.coeffs)

    def weighted_degrees(self, weights: Sequence) -> set:
        out = set()
        for i, c in enumerate(self.coeffs):
            out |= {d - weights[i] for d in c.weighted_degrees(weights)}
        return out

    def __str__(self):
        parts = []
        for v, c in zip(self.ring.vars, self.coeffs):
            if not c:
                continue
            s = str(c)
            tok = f"d/d{v}"
            if len(c) > 1:
                body, neg = f"({s})*{tok}", False
            elif c == 1:
                body, neg = tok, False
            elif c == -1:
                body, neg = tok, True
            elif s.startswith("-"):
                body, neg = f"{s[1:]}*{tok}", True
            else:
                body, neg = f"{s}*{tok}", False
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"VField({str(self)!r})"


def _same(a: VField, b: VField):
    if a.ring != b.ring:
        raise RingMismatch("ring mismatch")


class VFModule:
    """Module of vector fields given by generators; membership via a module GB."""

    def __init__(self, ring: Ring, gens: Iterable[VField]):
        gens = list(gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("generator ring mismatch")
        self.ring = ring
        self.gens = tuple(gens)

    @classmethod
    def parse(cls, texts: Sequence[str], ring: Ring) -> "VFModule":
        return cls(ring, [VField.parse(t, ring) for t in texts])

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, i):
        return self.gens[i]

    def nonzero_gens(self) -> list:
        return [g for g in self.gens if not g.is_zero()]

    @cached_property
    def gb(self) -> GB:
        return groebner_basis([g.to_vec() for g in self.nonzero_gens()],
                              ring=self.ring, rank=self.ring.n)

    def __contains__(self, eta: VField) -> bool:
        return module_membership(eta, self)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.gens) + ">"

    __repr__ = __str__


# -- basic operations ------------------------------------------------------------


def apply_field(eta: VField, f: Poly) -> Poly:
    if eta.ring != f.ring:
        raise RingMismatch("ring mismatch")
    out = f.ring.zero()
    for i, c in enumerate(eta.coeffs):
        if c:
            d = f.diff(i)
            if d:
                out = out + c * d
    return out


def is_logarithmic(eta: VField, I: Ideal) -> bool:
    if eta.ring != I.ring:
        raise RingMismatch("ring mismatch")
    return all(membership(apply_field(eta, g), I) for g in I.nonzero_gens())


def lie_bracket(eta: VField, xi: VField) -> VField:
    _same(eta, xi)
    return VField(eta.ring, [apply_field(eta, b) - apply_field(xi, a)
                             for a, b in zip(eta.coeffs, xi.coeffs)])


def euler_field(weights: Sequence, ring: Ring) -> VField:
    if len(weights) != ring.n:
        raise ValueError("one weight per variable")
    return VField(ring, [ring.gen(i) * Fraction(w) for i, w in enumerate(weights)])


def trivial_generators(f: Poly) -> VFModule:
    """Fields (df/dx_j) d/dx_i - (df/dx_i) d/dx_j for i < j, then f d/dx_i."""
    if not f:
        raise ValueError("trivial generators of the zero polynomial")
    ring = f.ring
    n = ring.n
    grads = [f.diff(i) for i in range(n)]
    zero = ring.zero()
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            c = [zero] * n
            c[i] = grads[j]
            c[j] = -grads[i]
            out.append(VField(ring, c))
    for i in range(n):
        c = [zero] * n
        c[i] = f
        out.append(VField(ring, c))
    return VFModule(ring, out)


# -- Derlog ---------------------------------------------------------------------


def _sort_fields(fields: Iterable[VField]) -> list:
    def key(v: VField):
        lead = max((max(c._t) for c in v.coeffs if c), default=0)
        pos = next(i for i, c in enumerate(v.coeffs) if c)
        return (v.degree(), pos, lead)

    return sorted(fields, key=key)


def _fields_from_syzygies(ring: Ring, syz: Sequence[FreeVec]) -> list:
    fields = []
    seen = set()
    for v in syz:
        eta = VField(ring, v.entries[:ring.n])
        if eta.is_zero():
            continue
        prim = _field_primitive(eta)
        if prim in seen:
            continue
        seen.add(prim)
        fields.append(prim)
    return fields


def _field_primitive(eta: VField) -> VField:
    """Scale to integer coefficients with content one and positive leading coefficient."""
    from .groebner import primitive, vec_to_dict, dict_to_vec

    d = primitive(vec_to_dict(eta.coeffs, eta.ring))
    return VField(eta.ring, dict_to_vec(d, eta.ring, eta.ring.n).entries)


def _tidy(ring: Ring, fields: list) -> list:
    """Deterministic, irredundant generator list (minimal when graded)."""
    fields = _sort_fields(fields)
    w = field_weights(fields)
    if w is not None:
        return minimal_generators(VFModule(ring, fields), w)
    return _irredundant(ring, fields)


def _irredundant(ring: Ring, fields: list) -> list:
    keep = list(fields)
    i = len(keep) - 1
    while i >= 0 and len(keep) > 1:
        rest = keep[:i] + keep[i + 1:]
        if module_membership(keep[i], VFModule(ring, rest)):
            keep = rest
        i -= 1
    return keep


def derlog_hypersurface(f: Poly) -> VFModule:
    """Generators of {eta : eta(f) in (f)} from the syzygies of (df/dx_1, ..., df/dx_n, f)."""
    from .groebner import syzygies

    if not f or f.is_constant():
        raise ValueError("Derlog needs a nonzero nonunit polynomial")
    ring = f.ring
    if not is_reduced(f):
        warnings.warn(f"{f} is not reduced; Derlog is taken for the given equation", stacklevel=2)
    row = [f.diff(i) for i in range(ring.n)] + [f]
    M = PolyMat(ring, 1, ring.n + 1, row)
    fields = _fields_from_syzygies(ring, syzygies(M))
    return VFModule(ring, _tidy(ring, fields))


def derlog_ideal(I: Ideal) -> VFModule:
    """Generators of {eta : eta(I) ⊆ I}.

    Kernel of the block matrix [J^T | g_l e_j] whose first n columns are the
    transposed Jacobian and whose remaining m*m columns put generator g_l in
    row j; the first n syzygy coordinates are the fields.
    """
    from .groebner import syzygies

    ring = I.ring
    gens = _dedupe(I.nonzero_gens())
    if not gens:
        raise ValueError("Derlog of the zero ideal")
    if I.is_unit():
        raise ValueError("Derlog of the unit ideal")
    m, n = len(gens), ring.n
    zero = ring.zero()
    cols = []
    for i in range(n):
        cols.append([g.diff(i) for g in gens])
    for j in range(m):
        for g in gens:
            col = [zero] * m
            col[j] = g
            cols.append(col)
    M = PolyMat.from_columns(cols, ring, m)
    fields = _fields_from_syzygies(ring, syzygies(M))
    return VFModule(ring, _tidy(ring, fields))


# -- Saito matrices and Fitting ideals ----------------------------------------


def saito_matrix(L: VFModule) -> PolyMat:
    gens = list(L.gens)
    if not gens:
        return PolyMat(L.ring, L.ring.n, 0, [])
    return PolyMat.from_columns([g.coeffs for g in gens], L.ring, L.ring.n)


def fitting_ideal(L: VFModule, k: int) -> Ideal:
    n = L.ring.n
    if not 1 <= k <= n:
        raise ValueError(f"Fitting ideal index {k} out of range 1..{n}")
    gens = L.nonzero_gens()
    if len(gens) < k:
        return Ideal([L.ring.zero()], L.ring)
    return minors_ideal(saito_matrix(VFModule(L.ring, gens)), k)


# -- module membership ----------------------------------------------------------


def module_membership(eta: VField, L: VFModule) -> bool:
    if eta.ring != L.ring:
        raise RingMismatch("ring mismatch")
    if eta.is_zero():
        return True
    if not L.nonzero_gens():
        return False
    return is_member(eta.to_vec(), L.gb)


def module_contains(L: VFModule, N: VFModule) -> bool:
    """Every generator of ``N`` lies in ``L``."""
    return all(module_membership(g, L) for g in N.gens)


def module_equal(L: VFModule, N: VFModule) -> bool:
    if L.ring != N.ring:
        raise RingMismatch("ring mismatch")
    return module_contains(L, N) and module_contains(N, L)


def field_weights(fields: Sequence[VField]) -> tuple | None:
    """Positive weights making every field homogeneous (d/dx_i has weight -w_i)."""
    fields = [f for f in fields if not f.is_zero()]
    if not fields:
        return None
    ring = fields[0].ring
    n = ring.n
    rows = []
    for eta in fields:
        vecs = []
        for i, c in enumerate(eta.coeffs):
            for exps, _ in c.terms():
                v = list(exps)
                v[i] -= 1
                vecs.append(v)
        for a, b in zip(vecs, vecs[1:]):
            rows.append([x - y for x, y in zip(a, b)])
    return find_weights(rows, n)


def minimal_generators(L: VFModule, weights: Sequence | None = None) -> list:
    """Minimal generators of a graded module, scanning by increasing weighted degree."""
    fields = L.nonzero_gens()
    if weights is None:
        weights = field_weights(fields)
    if weights is None:
        raise ValueError("generators are not homogeneous for any positive grading")
    for f in fields:
        if len(f.weighted_degrees(weights)) > 1:
            raise ValueError(f"field {f} is not homogeneous for weights {weights}")

    def wdeg(f):
        return next(iter(f.weighted_degrees(weights)))

    fields = sorted(fields, key=lambda f: (wdeg(f),) + tuple(_sort_key(f)))
    kept: list = []
    for f in fields:
        if kept and module_membership(f, VFModule(L.ring, kept)):
            continue
        kept.append(f)
    return kept


def _sort_key(f: VField):
    pos = next(i for i, c in enumerate(f.coeffs) if c)
    return (f.degree(), pos, max(f.coeffs[pos]._t))


def minimal_generator_count(L: VFModule, weights: Sequence | None = None) -> int:
    return len(minimal_generators(L, weights))


# -- pointwise linear algebra --------------------------------------------------


def field_value(eta: VField, p: Point) -> list:
    if p.ring != eta.ring:
        raise RingMismatch("ring mismatch")
    return [evaluate(c, p) for c in eta.coeffs]


def linearize(eta: VField, p: Point) -> list:
    """n×n rational matrix (d g_i / d x_j)(p) for eta = sum g_i d/dx_i."""
    if p.ring != eta.ring:
        raise RingMismatch("ring mismatch")
    if any(field_value(eta, p)):
        warnings.warn("linearizing a field that does not vanish at the point", stacklevel=2)
    n = eta.ring.n
    return [[evaluate(eta.coeffs[i].diff(j), p) for j in range(n)] for i in range(n)]


def span_dim(L: VFModule, p: Point) -> int:
    """Dimension of the span of the generator values at ``p``."""
    vals = [field_value(g, p) for g in L.gens]
    if not vals:
        return 0
    return _rank(vals, L.ring.n)

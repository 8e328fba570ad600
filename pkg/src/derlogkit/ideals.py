"""Ideal operations on top of the Groebner engine."""

from __future__ import annotations

import itertools
from functools import cached_property, reduce as _fold
from typing import Iterable, Sequence

from .groebner import GB, groebner_basis, is_member, primitive
from .poly import Poly, Ring, RingMismatch


class Ideal:
    """Finitely generated ideal; equality is semantic (same reduced GB)."""

    def __init__(self, gens: Iterable[Poly], ring: Ring | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("need a ring for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator {g} is not in {ring}")
        self.ring = ring
        self.gens = tuple(gens)

    @classmethod
    def parse(cls, texts: Sequence[str], ring: Ring) -> "Ideal":
        return cls([ring.parse(t) for t in texts], ring)

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls([ring.one()], ring)

    @classmethod
    def maximal(cls, ring: Ring) -> "Ideal":
        """The ideal of the origin."""
        return cls(ring.gens(), ring)

    @cached_property
    def gb(self) -> GB:
        return groebner_basis(self.gens, ring=self.ring)

    def nonzero_gens(self) -> list:
        return [g for g in self.gens if g]

    def is_zero(self) -> bool:
        return not self.nonzero_gens()

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def __contains__(self, f: Poly) -> bool:
        return membership(f, self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def __add__(self, other: "Ideal") -> "Ideal":
        _check(self, other)
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _check(self, other)
        return Ideal(_dedupe(a * b for a in self.nonzero_gens() for b in other.nonzero_gens()),
                     self.ring)

    def __pow__(self, k: int) -> "Ideal":
        return power(self, k)

    def canonical_gens(self) -> list:
        """Monic reduced Groebner basis elements."""
        return list(self.gb.elements)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


class PolyMat:
    """Rectangular matrix of polynomials, entries stored row-major."""

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Sequence[Poly]):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        for e in entries:
            if e.ring != ring:
                raise RingMismatch("matrix entries must share the ring")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]], ring: Ring | None = None) -> "PolyMat":
        rows = [list(r) for r in rows]
        if ring is None:
            ring = rows[0][0].ring
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(ring, len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Poly]], ring: Ring, nrows: int) -> "PolyMat":
        cols = [list(c) for c in cols]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length mismatch")
        return cls(ring, nrows, len(cols), [cols[j][i] for i in range(nrows) for j in range(len(cols))])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "PolyMat":
        return cls(ring, n, n, [ring.one() if i == j else ring.zero()
                               for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> "PolyMat":
        return PolyMat.from_columns([self.row(i) for i in range(self.rows)], self.ring, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMat":
        return PolyMat(self.ring, len(rows), len(cols),
                       [self[i, j] for i in rows for j in cols])

    def det(self) -> Poly:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows == 0:
            return self.ring.one()
        return _det_cols(self, tuple(range(self.rows)), tuple(range(self.cols)), {})

    def apply(self, v: Sequence[Poly]) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = self.ring.zero()
            for j in range(self.cols):
                e = self[i, j]
                if e and v[j]:
                    acc = acc + e * v[j]
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyMat):
            return NotImplemented
        return (self.ring, self.rows, self.cols, self.entries) == \
            (other.ring, other.rows, other.cols, other.entries)

    __hash__ = None

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows)) + "]"

    __repr__ = __str__


def _det_cols(M: PolyMat, rows: tuple, cols: tuple, memo: dict) -> Poly:
    """Laplace expansion along the last column, memoised on (rows, cols)."""
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        res = M[rows[0], cols[0]]
    else:
        c = cols[-1]
        rest = cols[:-1]
        res = M.ring.zero()
        k = len(rows)
        for idx, r in enumerate(rows):
            e = M[r, c]
            if not e:
                continue
            sub = _det_cols(M, rows[:idx] + rows[idx + 1:], rest, memo)
            if not sub:
                continue
            term = e * sub
            res = res + term if (idx + k - 1) % 2 == 0 else res - term
    memo[key] = res
    return res


def _check(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch(f"ring mismatch: {I.ring} vs {J.ring}")


def _dedupe(polys: Iterable[Poly]) -> list:
    """Drop zeros and scalar multiples, keeping first occurrences."""
    seen = set()
    out = []
    for p in polys:
        if not p:
            continue
        key = frozenset(primitive(dict(p._t)).items())
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return out


def _fresh_var(ring: Ring, base: str = "t") -> str:
    name = base
    k = 0
    while name in ring.vars:
        k += 1
        name = f"{base}{k}"
    return name


# -- membership ----------------------------------------------------------------


def membership(f: Poly, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise RingMismatch("ring mismatch")
    return is_member(f, I.gb)


def contains(I: Ideal, J: Ideal) -> bool:
    """``J`` is a subset of ``I``."""
    _check(I, J)
    G = I.gb
    return all(is_member(g, G) for g in J.gens)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _check(I, J)
    return I.gb == J.gb


# -- elimination-based operations ---------------------------------------------


def _with_elim_var(ring: Ring, name: str | None = None):
    t = name or _fresh_var(ring)
    S = Ring((t,) + ring.vars, "block", 1)
    shift = list(range(1, ring.n + 1))
    return S, S.gen(0), shift


def _back(S: Ring, ring: Ring, elems: Iterable[Poly], k: int = 1) -> list:
    out = []
    for g in elems:
        if any(i < k for i in g.variables()):
            continue
        d = {}
        u = S.unpack
        for m, c in g._t.items():
            d[ring.pack(u(m)[k:])] = c
        out.append(Poly(ring, d))
    return out


def intersect(I: Ideal, J: Ideal, *more: Ideal) -> Ideal:
    """Intersection via ``t*I + (1-t)*J`` and elimination of ``t``; folds left to right."""
    if more:
        return _fold(intersect, more, intersect(I, J))
    _check(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal([ring.zero()], ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    S, t, shift = _with_elim_var(ring)
    gens = [t * g.to_ring(S, shift) for g in I.nonzero_gens()]
    gens += [(S.one() - t) * g.to_ring(S, shift) for g in J.nonzero_gens()]
    G = groebner_basis(gens, ring=S)
    return Ideal(_back(S, ring, G.elements), ring)


def eliminate(I: Ideal, k: int) -> Ideal:
    """``I`` intersected with the subring in the variables after the first ``k``."""
    ring = I.ring
    if not 0 < k < ring.n:
        raise ValueError(f"cannot eliminate {k} of {ring.n} variables")
    S = Ring(ring.vars, "block", k)
    G = groebner_basis([g.to_ring(S) for g in I.gens], ring=S)
    sub = Ring(ring.vars[k:], ring.order if ring.order != "block" else "degrevlex")
    out = _back(S, sub, G.elements, k)
    return Ideal(out or [sub.zero()], sub)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J)``; each ``(I : g)`` is ``(I ∩ (g)) / g``."""
    _check(I, J)
    ring = I.ring
    parts = []
    for g in J.nonzero_gens():
        inter = intersect(I, Ideal([g], ring))
        parts.append(Ideal([h / g for h in inter.gens if h] or [ring.zero()], ring))
    if not parts:
        return Ideal.unit(ring)
    return _fold(intersect, parts[1:], parts[0])


def _saturate_by_poly(I: Ideal, g: Poly) -> Ideal:
    ring = I.ring
    if g.is_constant():
        return I
    if I.is_zero():
        return I
    lead = g.terms()
    if len(lead) == 1 and sum(lead[0][0]) == 1 and all(h.is_homogeneous() for h in I.gens):
        # homogeneous ideal saturated by a variable: make it last in degrevlex
        i = next(j for j, e in enumerate(lead[0][0]) if e)
        perm = [v for j, v in enumerate(ring.vars) if j != i] + [ring.vars[i]]
        S = Ring(tuple(perm), "degrevlex")
        G = groebner_basis([h.to_ring(S) for h in I.gens], ring=S)
        out = []
        last = S.n - 1
        for h in G.elements:
            k = min(e[last] for e, _ in h.terms())
            if k:
                ex = [0] * S.n
                ex[last] = k
                h = h / S.monomial(ex)
            out.append(h.to_ring(ring))
        return Ideal(out, ring)
    S, t, shift = _with_elim_var(ring)
    gens = [h.to_ring(S, shift) for h in I.nonzero_gens()]
    gens.append(S.one() - t * g.to_ring(S, shift))
    G = groebner_basis(gens, ring=S)
    return Ideal(_back(S, ring, G.elements) or [ring.zero()], ring)


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J^∞)`` as the intersection of ``(I : g^∞)`` over generators ``g`` of ``J``."""
    _check(I, J)
    gens = J.nonzero_gens()
    if not gens:
        raise ValueError("saturation by the zero ideal")
    parts = [_saturate_by_poly(I, g) for g in gens]
    return _fold(intersect, parts[1:], parts[0])


# -- radicals ------------------------------------------------------------------


def radical_membership(f: Poly, I: Ideal) -> bool:
    """Rabinowitsch: ``f`` is in the radical iff ``1`` is in ``I + (1 - t f)``."""
    if f.ring != I.ring:
        raise RingMismatch("ring mismatch")
    if not f:
        return True
    ring = I.ring
    if membership(f, I):
        return True
    t = _fresh_var(ring)
    S = Ring(ring.vars + (t,), "degrevlex")
    gens = [g.to_ring(S) for g in I.nonzero_gens()]
    gens.append(S.one() - S.gen(t) * f.to_ring(S))
    return groebner_basis(gens, ring=S).is_unit()


def radical_contains(I: Ideal, J: Ideal) -> bool:
    """Every generator of ``J`` lies in the radical of ``I``."""
    _check(I, J)
    return all(radical_membership(g, I) for g in J.nonzero_gens())


def radical_equal(I: Ideal, J: Ideal) -> bool:
    return radical_contains(I, J) and radical_contains(J, I)


# -- dimension -----------------------------------------------------------------


def dimension(I: Ideal) -> int:
    """Krull dimension of R/I: largest set of variables independent modulo lt(I); -1 for (1)."""
    G = I.gb
    n = I.ring.n
    if G.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(ex) if e) for ex in G.leading_exponents()]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def codim(I: Ideal) -> int:
    d = dimension(I)
    return I.ring.n - d if d >= 0 else I.ring.n + 1


# -- gcd / squarefree ----------------------------------------------------------


def gcd_poly(f: Poly, g: Poly) -> Poly:
    """Monic gcd, via ``lcm`` = generator of ``(f) ∩ (g)``."""
    if f.ring != g.ring:
        raise RingMismatch("ring mismatch")
    if not f and not g:
        raise ValueError("gcd of two zero polynomials")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    inter = intersect(Ideal([f]), Ideal([g]))
    gens = [h for h in inter.gb.elements]
    if len(gens) != 1:
        raise ArithmeticError("intersection of principal ideals is not principal")
    return ((f * g) / gens[0]).monic()


def gcd_many(polys: Iterable[Poly]) -> Poly:
    polys = [p for p in polys if p]
    if not polys:
        raise ValueError("gcd of zero polynomials")
    out = polys[0].monic()
    for p in polys[1:]:
        if out.is_constant():
            break
        out = gcd_poly(out, p)
    return out


def squarefree_part(f: Poly) -> Poly:
    if not f:
        raise ValueError("squarefree part of zero")
    cur = f
    while True:
        g = gcd_many([cur] + [cur.diff(i) for i in range(cur.ring.n)])
        if g.is_constant():
            return cur.monic()
        cur = cur / g


def is_reduced(f: Poly) -> bool:
    if not f:
        return False
    return squarefree_part(f).degree() == f.degree()


def associates(f: Poly, g: Poly) -> bool:
    """Equal up to a nonzero rational scalar."""
    if not f or not g:
        return not f and not g
    return f.monic() == g.monic()


# -- matrices ------------------------------------------------------------------


def iter_minors(M: PolyMat, k: int):
    """Yield ``(rows, cols, det)`` for all k×k minors, columns-major lexicographic.

    Column subsets are walked depth first so only the minors of the current
    column prefix are held in memory.
    """
    r, c = M.rows, M.cols
    if not 1 <= k <= min(r, c):
        raise ValueError(f"minor size {k} out of range for a {r}x{c} matrix")
    zero = M.ring.zero()
    row_sets = {j: list(itertools.combinations(range(r), j)) for j in range(1, k + 1)}

    def extend(prefix: tuple, prev: dict, start: int):
        j = len(prefix) + 1
        for col in range(start, c - (k - j)):
            cur = {}
            column = [M[i, col] for i in range(r)]
            for rows in row_sets[j]:
                if j == 1:
                    val = column[rows[0]]
                else:
                    val = zero
                    for idx, rr in enumerate(rows):
                        e = column[rr]
                        if not e:
                            continue
                        sub = prev.get(rows[:idx] + rows[idx + 1:])
                        if not sub:
                            continue
                        term = e * sub
                        val = val + term if (idx + j - 1) % 2 == 0 else val - term
                if val:
                    cur[rows] = val
            cols = prefix + (col,)
            if j == k:
                for rows in row_sets[k]:
                    v = cur.get(rows)
                    if v:
                        yield rows, cols, v
            elif cur:
                yield from extend(cols, cur, col + 1)

    yield from extend((), {}, 0)


def minors_ideal(M: PolyMat, k: int) -> Ideal:
    """Ideal of k×k minors (zero minors and scalar duplicates dropped)."""
    gens = _dedupe(det for _, _, det in iter_minors(M, k))
    return Ideal(gens or [M.ring.zero()], M.ring)


def jacobian(gens: Sequence[Poly]) -> PolyMat:
    """m×n matrix with entry (j, i) = ∂ f_j / ∂ x_i."""
    gens = list(gens)
    if not gens:
        raise ValueError("jacobian of an empty list")
    ring = gens[0].ring
    return PolyMat.from_rows([[f.diff(i) for i in range(ring.n)] for f in gens], ring)


def singular_locus_ideal(I: Ideal) -> Ideal:
    """``I`` plus the codim-sized minors of its Jacobian; assumes equidimensional and radical."""
    if I.is_zero() or I.is_unit():
        raise ValueError("singular locus of the zero or unit ideal")
    c = codim(I)
    gens = I.nonzero_gens()
    J = jacobian(gens)
    if c > min(J.rows, J.cols):
        return I
    return I + minors_ideal(J, c)


# -- powers --------------------------------------------------------------------


def power(I: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("negative power")
    ring = I.ring
    if k == 0:
        return Ideal.unit(ring)
    gens = _dedupe(I.gens)
    if not gens:
        return Ideal([ring.zero()], ring)
    out = []
    for combo in itertools.combinations_with_replacement(range(len(gens)), k):
        p = ring.one()
        for i in combo:
            p = p * gens[i]
        out.append(p)
    return Ideal(_dedupe(out), ring)


def homogeneity_weights(polys: Sequence[Poly]) -> tuple | None:
    """Positive integer weights making every polynomial weighted homogeneous, or None."""
    from .weights import find_weights

    rows = []
    for p in polys:
        exps = [e for e, _ in p.terms()]
        for a, b in zip(exps, exps[1:]):
            rows.append([x - y for x, y in zip(a, b)])
    if not polys:
        return None
    return find_weights(rows, polys[0].ring.n)


def minimal_generators(I: Ideal, weights: Sequence[int] | None = None) -> list:
    """Minimal generating set for a (weighted) homogeneous ideal.

    Generators are scanned by increasing weighted degree and kept when not in
    the ideal generated by those already kept.  Without a grading this gives
    an irredundant (not necessarily minimum) set.
    """
    gens = _dedupe(I.gens)
    ring = I.ring
    if weights is None:
        weights = homogeneity_weights(gens)
    if weights is None:
        keep = list(gens)
        changed = True
        while changed:
            changed = False
            for g in list(keep):
                rest = [h for h in keep if h is not g]
                if rest and membership(g, Ideal(rest, ring)):
                    keep = rest
                    changed = True
                    break
        return keep

    def wdeg(p):
        return max(p.weighted_degrees(weights))

    gens.sort(key=wdeg)
    kept: list = []
    for g in gens:
        if kept and membership(g, Ideal(kept, ring)):
            continue
        kept.append(g)
    return kept


def is_complete_intersection(P: Ideal) -> bool:
    """Generated by ``codim(P)`` elements (checked on a minimal generating set)."""
    if P.is_unit() or P.is_zero():
        return False
    return len(minimal_generators(P)) == codim(P)


def symbolic_power(P: Ideal, ell: int, exclusion: Ideal | None = None) -> Ideal:
    """``P^(ell)``.

    Complete intersections return the ordinary power.  Otherwise the ordinary
    power is saturated by ``exclusion`` (default: the singular locus of V(P));
    this is exact when every embedded prime of ``P^ell`` contains it.
    """
    if ell < 1:
        raise ValueError("symbolic power exponent must be >= 1")
    if is_complete_intersection(P):
        return power(P, ell)
    E = exclusion if exclusion is not None else singular_locus_ideal(P)
    return saturate(power(P, ell), E)

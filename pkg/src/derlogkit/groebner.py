"""Buchberger engine for ideals and for submodules of free modules.

Internally an element is a ``dict`` from packed monomial to ``int``.  For
module elements the packed monomial carries a position field above the
exponent bits (see :mod:`derlogkit.poly`); position ``j`` is stored as
``POS_TOP - j`` so that lower indices compare larger, giving a
position-over-term order.  Coefficients are kept primitive (integer, content
one, positive leading coefficient); the public :class:`GB` exposes monic
rational elements.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from .poly import Poly, Ring, RingMismatch

POS_TOP = (1 << 16) - 1


# -- conversion ---------------------------------------------------------------


def primitive(d: dict) -> dict:
    """Integer coefficients, content one, positive leading coefficient."""
    if not d:
        return d
    den = 1
    for c in d.values():
        if not isinstance(c, int):
            den = den * c.denominator // gcd(den, c.denominator)
    if den != 1:
        d = {m: int(c * den) for m, c in d.items()}
    g = 0
    for c in d.values():
        g = gcd(g, c)
        if g == 1:
            break
    if d[max(d)] < 0:
        g = -g
    if g == 1:
        return d
    return {m: c // g for m, c in d.items()}


@dataclass(frozen=True)
class FreeVec:
    """Element of the free module R^m."""

    ring: Ring
    entries: tuple

    def __post_init__(self):
        ent = tuple(self.entries)
        for e in ent:
            if e.ring != self.ring:
                raise RingMismatch("entries must share the ring")
        object.__setattr__(self, "entries", ent)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "FreeVec") -> "FreeVec":
        _same_rank(self, other)
        return FreeVec(self.ring, tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "FreeVec") -> "FreeVec":
        _same_rank(self, other)
        return FreeVec(self.ring, tuple(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return FreeVec(self.ring, tuple(-a for a in self))

    def __mul__(self, c):
        return FreeVec(self.ring, tuple(a * c for a in self))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    __repr__ = __str__


def _same_rank(a: FreeVec, b: FreeVec):
    if a.ring != b.ring:
        raise RingMismatch("ring mismatch")
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")


def vec_to_dict(v: Union[FreeVec, Sequence[Poly]], ring: Ring) -> dict:
    shift = ring.pos_shift
    d = {}
    for j, p in enumerate(v):
        if p.ring != ring:
            raise RingMismatch("ring mismatch")
        pos = (POS_TOP - j) << shift
        for m, c in p._t.items():
            d[m | pos] = c
    return d


def dict_to_vec(d: dict, ring: Ring, rank: int) -> FreeVec:
    shift = ring.pos_shift
    low = (1 << shift) - 1
    parts: list = [dict() for _ in range(rank)]
    for m, c in d.items():
        j = POS_TOP - (m >> shift)
        parts[j][m & low] = c if isinstance(c, int) else Fraction(c)
    return FreeVec(ring, tuple(Poly(ring, p) for p in parts))


def _monic_poly(ring: Ring, d: dict) -> Poly:
    lc = d[max(d)]
    if lc == 1:
        return Poly(ring, dict(d))
    out = {}
    for m, c in d.items():
        q = Fraction(c, lc)
        out[m] = q.numerator if q.denominator == 1 else q
    return Poly(ring, out)


def position(m: int, ring: Ring) -> int:
    return POS_TOP - (m >> ring.pos_shift)


# -- reduction ----------------------------------------------------------------


class _Reducers:
    """Leading-monomial index over a list of primitive elements."""

    __slots__ = ("ring", "by_pos", "mask", "guard", "shift")

    def __init__(self, ring: Ring, polys: Sequence[dict] = ()):
        self.ring = ring
        self.by_pos: dict = {}
        self.mask = ring.exp_mask
        self.guard = ring.guard
        self.shift = ring.pos_shift
        for p in polys:
            self.add(p)

    def add(self, p: dict):
        lm = max(p)
        self.by_pos.setdefault(lm >> self.shift, []).append((lm & self.mask, lm, p[lm], p))

    def find(self, m: int):
        lst = self.by_pos.get(m >> self.shift)
        if not lst:
            return None
        e = m & self.mask
        g = self.guard
        for ea, lm, lc, p in lst:
            if not ((e - ea) & g):
                return lm, lc, p
        return None


def _reduce(f: dict, red: _Reducers) -> dict:
    """Full normal form of ``f``, made primitive (``f`` itself is untouched)."""
    f = dict(f)
    done = []
    scale = 1
    find = red.find
    while f:
        m = max(f)
        hit = find(m)
        if hit is None:
            done.append((m, f.pop(m), scale))
            continue
        lm, lc, p = hit
        c = f.pop(m)
        g = gcd(c, lc)
        a, b = lc // g, c // g
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for k in f:
                f[k] *= a
            scale *= a
        q = m - lm
        get = f.get
        for mg, cg in p.items():
            if mg == lm:
                continue
            k = mg + q
            v = get(k, 0) - b * cg
            if v:
                f[k] = v
            else:
                del f[k]
    if not done:
        return {}
    return primitive({m: c * (scale // s) for m, c, s in done})


def _reduces_to_zero(f: dict, red: _Reducers) -> bool:
    """Top-reduce; stops as soon as the leading term is irreducible."""
    f = dict(f)
    find = red.find
    while f:
        m = max(f)
        hit = find(m)
        if hit is None:
            return False
        lm, lc, p = hit
        c = f.pop(m)
        g = gcd(c, lc)
        a, b = lc // g, c // g
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for k in f:
                f[k] *= a
        q = m - lm
        get = f.get
        for mg, cg in p.items():
            if mg == lm:
                continue
            k = mg + q
            v = get(k, 0) - b * cg
            if v:
                f[k] = v
            else:
                del f[k]
        if len(f) > 64:
            f = primitive(f) if f else f
    return True


# -- Buchberger ---------------------------------------------------------------


def _spoly(ring: Ring, f: dict, g: dict, lcm_m: int) -> dict:
    lmf, lmg = max(f), max(g)
    cf, cg = f[lmf], g[lmg]
    k = gcd(cf, cg)
    a, b = cg // k, cf // k
    uf, ug = lcm_m - lmf, lcm_m - lmg
    out = {}
    for m, c in f.items():
        if m != lmf:
            out[m + uf] = a * c
    get = out.get
    for m, c in g.items():
        if m != lmg:
            kk = m + ug
            v = get(kk, 0) - b * c
            if v:
                out[kk] = v
            else:
                out.pop(kk, None)
    return out


def buchberger(ring: Ring, gens: Sequence[dict], module: bool = False,
               stats: dict | None = None) -> list:
    """Reduced Groebner basis (primitive elements, ascending by leading monomial)."""
    polys: list = []
    lms: list = []
    alive: list = []  # indices currently in G
    pairs: list = []  # heap of (deg, lcm, i, j)
    divides = ring.divides
    unpack = ring.unpack
    red = _Reducers(ring)
    n_spairs = 0

    def coprime(a, b):
        if module:
            return False
        return ring.coprime(a, b)

    def lcm_deg(a, b):
        l = ring.mono_lcm(a, b)
        return sum(unpack(l)), l

    def update(h: int):
        nonlocal pairs, alive
        lmh = lms[h]
        posh = lmh >> ring.pos_shift
        cand = [g for g in alive if (lms[g] >> ring.pos_shift) == posh]
        lcms = {g: ring.mono_lcm(lmh, lms[g]) for g in cand}
        C = list(cand)
        D = []
        while C:
            g1 = C.pop()
            l1 = lcms[g1]
            if coprime(lmh, lms[g1]) or (
                    all(not divides(lcms[g2], l1) for g2 in C)
                    and all(not divides(lcms[g2], l1) for g2 in D)):
                D.append(g1)
        E = [g for g in D if not coprime(lmh, lms[g])]
        keep = []
        for item in pairs:
            _, l12, i, j = item
            if divides(lmh, l12) and ring.mono_lcm(lms[i], lmh) != l12 \
                    and ring.mono_lcm(lmh, lms[j]) != l12:
                continue
            keep.append(item)
        for g in E:
            l = lcms[g]
            i, j = (g, h) if g < h else (h, g)
            keep.append((sum(unpack(l)), l, i, j))
        heapq.heapify(keep)
        pairs = keep
        alive = [g for g in alive if not divides(lmh, lms[g])] + [h]

    def insert(p: dict):
        polys.append(p)
        lms.append(max(p))
        idx = len(polys) - 1
        update(idx)
        red.add(p)
        return idx

    # seed: interreduce the input cheaply by reducing each against earlier ones
    seed = [primitive(dict(g)) for g in gens if g]
    seed.sort(key=lambda p: (sum(unpack(max(p))), max(p)))
    for g in seed:
        r = _reduce(g, red)
        if r:
            insert(r)

    while pairs:
        _, l, i, j = heapq.heappop(pairs)
        n_spairs += 1
        s = _spoly(ring, polys[i], polys[j], l)
        if not s:
            continue
        r = _reduce(s, red)
        if r:
            insert(r)

    if stats is not None:
        stats["spairs"] = n_spairs
        stats["inserted"] = len(polys)
    return interreduce(ring, [polys[g] for g in alive])


def interreduce(ring: Ring, polys: Sequence[dict]) -> list:
    """Minimalise leading monomials and tail-reduce; ascending by leading monomial."""
    polys = sorted((p for p in polys if p), key=max)
    minimal = []
    for p in polys:
        lm = max(p)
        if any(ring.divides(max(q), lm) for q in minimal):
            continue
        minimal = [q for q in minimal if not ring.divides(lm, max(q))]
        minimal.append(p)
    minimal.sort(key=max)
    out = []
    for k, p in enumerate(minimal):
        others = _Reducers(ring, minimal[:k] + minimal[k + 1:])
        out.append(primitive(_tail_reduce_exact(p, others)))
    out.sort(key=max)
    return out


def _tail_reduce_exact(p: dict, red: _Reducers) -> dict:
    lm = max(p)
    f = dict(p)
    done = {lm: f.pop(lm)}
    # reduce the tail term by term while scaling the kept part along with it
    while f:
        m = max(f)
        hit = red.find(m)
        if hit is None:
            done[m] = f.pop(m)
            continue
        rlm, lc, q = hit
        c = f.pop(m)
        g = gcd(c, lc)
        a, b = lc // g, c // g
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for k in f:
                f[k] *= a
            for k in done:
                done[k] *= a
        u = m - rlm
        get = f.get
        for mg, cg in q.items():
            if mg == rlm:
                continue
            k = mg + u
            v = get(k, 0) - b * cg
            if v:
                f[k] = v
            else:
                del f[k]
    return done


# -- public API ---------------------------------------------------------------


class GB:
    """Reduced Groebner basis of an ideal (rank 0) or of a submodule of R^rank."""

    def __init__(self, ring: Ring, internal: list, rank: int = 0):
        self.ring = ring
        self.rank = rank
        self._internal = internal
        self._red = None
        self._elements = None

    @property
    def order(self) -> str:
        return self.ring.order

    @property
    def reducers(self) -> _Reducers:
        if self._red is None:
            self._red = _Reducers(self.ring, self._internal)
        return self._red

    @property
    def elements(self) -> list:
        if self._elements is None:
            if self.rank:
                self._elements = [_monic_vec(self.ring, d, self.rank) for d in self._internal]
            else:
                self._elements = [_monic_poly(self.ring, d) for d in self._internal]
        return self._elements

    def __len__(self):
        return len(self._internal)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self) -> bool:
        return not self.rank and len(self._internal) == 1 and self._internal[0].keys() == {0}

    def is_zero(self) -> bool:
        return not self._internal

    def leading_monomials(self) -> list:
        return [max(d) for d in self._internal]

    def leading_exponents(self) -> list:
        return [self.ring.unpack(m) for m in self.leading_monomials()]

    def __eq__(self, other):
        if not isinstance(other, GB):
            return NotImplemented
        return (self.ring == other.ring and self.rank == other.rank
                and self._internal == other._internal)

    def __hash__(self):
        return hash((self.ring, self.rank, tuple(frozenset(d.items()) for d in self._internal)))

    def __repr__(self):
        return f"GB({[str(e) for e in self.elements]})"


def _monic_vec(ring: Ring, d: dict, rank: int) -> FreeVec:
    lc = d[max(d)]
    return dict_to_vec({m: Fraction(c, lc) for m, c in d.items()}, ring, rank)


def _to_internal(items, ring: Ring, rank: int | None):
    out = []
    for it in items:
        if isinstance(it, Poly):
            if it.ring != ring:
                raise RingMismatch("ring mismatch")
            if rank:
                raise ValueError("mixing polynomials and module elements")
            out.append(primitive(dict(it._t)))
        else:
            if rank is not None and len(it) != rank:
                raise ValueError(f"rank mismatch: expected {rank}, got {len(it)}")
            out.append(primitive(vec_to_dict(it, ring)))
    return out


def groebner_basis(gens: Sequence, ring: Ring | None = None, order: str | None = None,
                   rank: int | None = None) -> GB:
    """Reduced Groebner basis of the ideal (Polys) or submodule (FreeVecs) generated by ``gens``.

    ``order`` re-targets polynomial generators to another monomial order of the
    same variables.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring from an empty generator list")
        ring = gens[0].ring
    if order is not None and order != ring.order:
        target = ring.with_order(order)
        gens = [g.to_ring(target) if isinstance(g, Poly)
                else FreeVec(target, tuple(e.to_ring(target) for e in g)) for g in gens]
        ring = target
    if rank is None:
        rank = 0 if not gens or isinstance(gens[0], Poly) else len(gens[0])
    internal = _to_internal(gens, ring, rank if rank else None)
    basis = buchberger(ring, internal, module=bool(rank))
    return GB(ring, basis, rank)


def reduce(f: Union[Poly, FreeVec], G: GB) -> Union[Poly, FreeVec]:
    """Normal form of ``f`` modulo ``G`` (scaled so the result is exact, not primitive)."""
    ring = G.ring
    if isinstance(f, Poly):
        if f.ring != ring:
            raise RingMismatch("ring mismatch")
        if G.rank:
            raise ValueError("cannot reduce a polynomial modulo a module basis")
        return _normal_form_rational(dict(f._t), G, lambda d: Poly(ring, d))
    if f.ring != ring:
        raise RingMismatch("ring mismatch")
    if len(f) != G.rank:
        raise ValueError(f"rank mismatch: {len(f)} vs {G.rank}")
    return _normal_form_rational(vec_to_dict(f, ring), G,
                                 lambda d: dict_to_vec(d, ring, G.rank))


def _normal_form_rational(d: dict, G: GB, build):
    """Exact normal form with rational coefficients (the remainder of true division)."""
    d = {m: Fraction(c) for m, c in d.items()}
    red = G.reducers
    out = {}
    while d:
        m = max(d)
        hit = red.find(m)
        c = d.pop(m)
        if hit is None:
            out[m] = c
            continue
        lm, lc, p = hit
        s = c / lc
        u = m - lm
        for mg, cg in p.items():
            if mg == lm:
                continue
            k = mg + u
            v = d.get(k, 0) - s * cg
            if v:
                d[k] = v
            else:
                d.pop(k, None)
    return build({m: (c.numerator if c.denominator == 1 else c) for m, c in out.items()})


def is_member(f: Union[Poly, FreeVec], G: GB) -> bool:
    ring = G.ring
    if isinstance(f, Poly):
        if f.ring != ring:
            raise RingMismatch("ring mismatch")
        d = dict(f._t)
    else:
        if len(f) != G.rank:
            raise ValueError("rank mismatch")
        d = vec_to_dict(f, ring)
    if not d:
        return True
    return _reduces_to_zero(primitive(d), G.reducers)


def spoly_certificate(G: GB) -> bool:
    """Check Buchberger's criterion: every S-polynomial of ``G`` reduces to zero."""
    ring = G.ring
    polys = G._internal
    red = G.reducers
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            a, b = max(polys[i]), max(polys[j])
            if (a >> ring.pos_shift) != (b >> ring.pos_shift):
                continue
            s = _spoly(ring, polys[i], polys[j], ring.mono_lcm(a, b))
            if s and not _reduces_to_zero(primitive(s), red):
                return False
    return True


# -- syzygies -----------------------------------------------------------------


def syzygies(M) -> list:
    """Generators of the kernel of ``M : R^c -> R^r`` as FreeVecs of length c.

    Computed from a position-over-term Groebner basis of the graph
    ``{(column_j, e_j)}`` in R^(r+c): basis elements whose leading position
    lies in the ``e`` block have a vanishing ``M`` part and generate the
    kernel.
    """
    ring, r, c = M.ring, M.rows, M.cols
    if r == 0 or c == 0:
        raise ValueError("empty matrix")
    shift = ring.pos_shift
    gens = []
    for j in range(c):
        d = {}
        for i in range(r):
            e = M[i, j]
            pos = (POS_TOP - i) << shift
            for m, cf in e._t.items():
                d[m | pos] = cf
        d[(POS_TOP - (r + j)) << shift] = 1
        gens.append(primitive(d))
    basis = buchberger(ring, gens, module=True)
    out = []
    low = (1 << shift) - 1
    for d in basis:
        if POS_TOP - (max(d) >> shift) < r:
            continue
        parts: list = [dict() for _ in range(c)]
        for m, cf in d.items():
            j = POS_TOP - (m >> shift) - r
            parts[j][m & low] = cf
        out.append(FreeVec(ring, tuple(Poly(ring, p) for p in parts)))
    return out

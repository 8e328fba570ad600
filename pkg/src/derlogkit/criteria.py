"""Decision procedures on modules of logarithmic vector fields.

Every check returns a :class:`CheckReport` whose witnesses are plain JSON-ready
dicts, so the CLI can serialise reports without knowing about the checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .derlog import (VField, VFModule, derlog_hypersurface, field_value, fitting_ideal,
                     is_logarithmic, lie_bracket, module_equal,
                     module_membership, saito_matrix, span_dim)
from .ideals import (Ideal, associates, contains, dimension, gcd_many, ideal_equal,
                     intersect, is_complete_intersection, is_reduced, iter_minors,
                     minimal_generators, power, radical_equal,
                     squarefree_part, symbolic_power)
from .groebner import is_member
from .poly import Point, Poly, Ring, evaluate
from .weights import nullspace, rank

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


# -- report types --------------------------------------------------------------


@dataclass(eq=False)
class ComponentSpec:
    """Irreducible piece of the variety (or of a singular stratum) with its dimension.

    ``top`` marks components of the variety itself; only those are held to the
    sharpness conditions.  ``exclusion`` overrides the saturating ideal used for
    symbolic powers.
    """

    ideal: Ideal
    dim: int
    label: str = ""
    top: bool = True
    exclusion: Ideal | None = None

    def validate(self):
        if self.ideal.is_unit() or self.ideal.is_zero():
            raise ValueError(f"component {self.label or self.ideal} must be a proper nonzero ideal")
        d = dimension(self.ideal)
        if d != self.dim:
            raise ValueError(f"component {self.label or self.ideal} has dimension {d}, not {self.dim}")
        return self

    @property
    def name(self) -> str:
        return self.label or str(self.ideal)


@dataclass
class CheckReport:
    check: str
    verdict: str
    witnesses: list = field(default_factory=list)
    caveats: list = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict != INCONCLUSIVE and not self.witnesses:
            raise ValueError("pass/fail reports need at least one witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def witness(self, kind: str) -> list:
        return [w for w in self.witnesses if w["kind"] == kind]

    def to_dict(self) -> dict:
        return {"check": self.check, "verdict": self.verdict,
                "witnesses": self.witnesses, "caveats": sorted(set(self.caveats))}


def ideal_repr(I: Ideal) -> list:
    """Canonical serialisation: reduced GB elements as strings."""
    return [str(g) for g in I.canonical_gens()]


def _w(kind: str, **data) -> dict:
    return {"kind": kind, **data}


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _caveat_for(P: Ideal, exclusion: Ideal | None) -> str | None:
    if is_complete_intersection(P):
        return None
    which = "supplied exclusion ideal" if exclusion is not None else "singular locus"
    return (f"symbolic power of {P} computed by saturating with the {which}; "
            "exact only if every embedded prime of the ordinary power contains it")


# -- smooth germs --------------------------------------------------------------


def coordinate_ideal(ring: Ring, d: int) -> Ideal:
    """Ideal of the coordinate subspace V(x_1, ..., x_{n-d})."""
    n = ring.n
    if not 0 <= d < n:
        raise ValueError(f"need 0 <= d < n, got d={d}, n={n}")
    return Ideal([ring.gen(i) for i in range(n - d)], ring)


def smooth_germ_fields(ring: Ring, d: int) -> list:
    """d/dx_k along the subspace and x_j d/dx_i across it."""
    n = ring.n
    c = n - d
    coordinate_ideal(ring, d)
    out = [VField.partial(ring, k) for k in range(c, n)]
    zero = ring.zero()
    for i in range(c):
        for j in range(c):
            coeffs = [zero] * n
            coeffs[i] = ring.gen(j)
            out.append(VField(ring, coeffs))
    return out


def _jacobian_at(eta: VField, p: Point) -> list:
    # same matrix as linearize, without the vanishing check: combinations are taken afterwards
    n = eta.ring.n
    return [[evaluate(eta.coeffs[i].diff(j), p) for j in range(n)] for i in range(n)]


def smooth_criterion(L: VFModule, d: int, p: Point | None = None) -> CheckReport:
    """Generation test for the coordinate subspace germ V(x_1..x_{n-d}) at ``p``.

    Passes iff the generator values span a d-dimensional space and the
    linearisations of the fields vanishing at ``p`` induce all endomorphisms
    of the (n-d)-dimensional normal space.
    """
    ring = L.ring
    n = ring.n
    I = coordinate_ideal(ring, d)
    c = n - d
    p = p or Point.origin(ring)
    if any(p.coords[i] for i in range(c)):
        raise ValueError("point is not on the coordinate subspace")
    bad = [str(g) for g in L.gens if not is_logarithmic(g, I)]
    if bad:
        raise ValueError(f"fields not logarithmic for {I}: {', '.join(bad)}")

    gens = L.nonzero_gens()
    sd = span_dim(VFModule(ring, gens), p)
    # C-span of the generators that vanish at p
    vals = [field_value(g, p) for g in gens]
    combos = nullspace([[vals[j][i] for j in range(len(gens))] for i in range(n)], len(gens)) \
        if gens else []
    lins = [_jacobian_at(g, p) for g in gens]
    images = []
    for cvec in combos:
        block = [Fraction(0)] * (c * c)
        for j, a in enumerate(cvec):
            if a:
                for r in range(c):
                    for s in range(c):
                        block[r * c + s] += a * lins[j][r][s]
        images.append(block)
    beta_rank = rank(images, c * c) if images else 0
    ok = sd == d and beta_rank == c * c
    wit = [_w("span_dim", value=sd, expected=d),
           _w("beta_rank", value=beta_rank, expected=c * c)]
    return CheckReport("smooth-criterion", _verdict(ok), wit)


def smooth_fitting_formula(d: int, n: int, k: int, ring: Ring | None = None) -> Ideal:
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    ring = ring or Ring(tuple(f"x{i + 1}" for i in range(n)))
    if ring.n != n:
        raise ValueError("ring size does not match n")
    I = coordinate_ideal(ring, d)
    return power(I, k - d) if k > d else Ideal.unit(ring)


def check_smooth_fitting(L: VFModule, d: int) -> CheckReport:
    ring = L.ring
    n = ring.n
    wit = []
    ok = True
    for k in range(1, n + 1):
        F = fitting_ideal(L, k)
        expected = smooth_fitting_formula(d, n, k, ring)
        eq = ideal_equal(F, expected)
        ok &= eq
        wit.append(_w("fitting", k=k, equal=eq, fitting=ideal_repr(F),
                      expected=ideal_repr(expected)))
    return CheckReport("smooth-fitting", _verdict(ok), wit)


# -- bounds on Fitting ideals ---------------------------------------------------


class _SymCache:
    def __init__(self):
        self.data = {}
        self.caveats = []

    def get(self, comp: ComponentSpec, ell: int) -> Ideal:
        key = (id(comp), ell)
        if key not in self.data:
            self.data[key] = symbolic_power(comp.ideal, ell, comp.exclusion)
            cav = _caveat_for(comp.ideal, comp.exclusion)
            if cav and cav not in self.caveats:
                self.caveats.append(cav)
        return self.data[key]


def _bound(components: Sequence[ComponentSpec], k: int, cache: _SymCache) -> Ideal:
    parts = [cache.get(c, k - c.dim) for c in components if k > c.dim]
    if not parts:
        ring = components[0].ideal.ring
        return Ideal.unit(ring)
    if len(parts) == 1:
        return parts[0]
    return intersect(*parts)


def thm_bound(components: Sequence[ComponentSpec], k: int) -> Ideal:
    """Intersection of P^(k - dim P) over the components with k > dim."""
    if not components:
        raise ValueError("no components")
    for c in components:
        c.validate()
    return _bound(components, k, _SymCache())


def check_bound_and_sharpness(L: VFModule, components: Sequence[ComponentSpec],
                              kmax: int | None = None, kmin: int = 1) -> CheckReport:
    """Containment of each Fitting ideal in its bound, sharpness, and equality flags."""
    ring = L.ring
    kmax = kmax or ring.n
    for c in components:
        c.validate()
    cache = _SymCache()
    wit = []
    caveats = []
    ok = True
    for c in components:
        log = all(is_logarithmic(g, c.ideal) for g in L.nonzero_gens())
        if not log:
            caveats.append(f"fields are not all logarithmic for component {c.name}")
    for k in range(kmin, kmax + 1):
        F = fitting_ideal(L, k)
        B = _bound(components, k, cache)
        inside = contains(B, F)
        exact = inside and contains(F, B)
        rad = exact or radical_equal(F, B)
        ok &= inside
        sharp = []
        for c in components:
            if k <= c.dim:
                continue
            above = cache.get(c, k - c.dim + 1)
            s = not contains(above, F)
            if c.top:
                ok &= s
            sharp.append({"component": c.name, "exponent": k - c.dim + 1,
                          "not_contained": s, "enforced": c.top})
        wit.append(_w("fitting-bound", k=k, contained=inside, exact=exact, radical=rad,
                      sharpness=sharp, fitting=ideal_repr(F), bound=ideal_repr(B)))
    caveats.extend(cache.caveats)
    return CheckReport("bound", _verdict(ok), wit, caveats)


def flags(report: CheckReport, name: str) -> dict:
    """``{k: flag}`` for ``name`` in ("contained", "exact", "radical")."""
    return {w["k"]: w[name] for w in report.witness("fitting-bound")}


def component_condition(L: VFModule, X0: ComponentSpec) -> CheckReport:
    """I_{d+1}(L) must not lie in the symbolic square of the component ideal."""
    ring = L.ring
    X0.validate()
    d = X0.dim
    P = X0.ideal
    if d == ring.n - 1 and len(minimal_generators(P)) != 1:
        raise ValueError("a hypersurface component must be principal")
    sq = symbolic_power(P, 2, X0.exclusion)
    caveats = [c for c in [_caveat_for(P, X0.exclusion)] if c]
    gens = L.nonzero_gens()
    if len(gens) < d + 1:
        return CheckReport("component", FAIL,
                           [_w("minor-outside-square", k=d + 1, minor=None,
                               reason="fewer generators than the minor size")], caveats)
    M = saito_matrix(VFModule(ring, gens))
    gb = sq.gb
    for rows, cols, det in iter_minors(M, d + 1):
        if not is_member(det, gb):
            return CheckReport("component", PASS,
                               [_w("minor-outside-square", k=d + 1, rows=list(rows),
                                   cols=list(cols), minor=str(det))], caveats)
    return CheckReport("component", FAIL,
                       [_w("minor-outside-square", k=d + 1, minor=None,
                           square=ideal_repr(sq))], caveats)


# -- Saito-type criteria --------------------------------------------------------


def _det(fields: Sequence[VField]) -> Poly:
    return saito_matrix(VFModule(fields[0].ring, fields)).det()


def _need_n(fields: Sequence[VField]) -> Ring:
    fields = list(fields)
    if not fields:
        raise ValueError("no fields given")
    ring = fields[0].ring
    if len(fields) != ring.n:
        raise ValueError(f"need exactly {ring.n} fields, got {len(fields)}")
    return ring


def _free_witnesses(L: VFModule, f: Poly) -> tuple:
    """Module equality with Derlog(f) plus the hypersurface sharpness facts."""
    D = derlog_hypersurface(f)
    eq = module_equal(L, D)
    n = L.ring.n
    Fn = fitting_ideal(L, n)
    fi = Ideal([f])
    exact = ideal_equal(Fn, fi)
    not_sq = not contains(power(fi, 2), Fn)
    return eq and exact and not_sq, [
        _w("module-equal", target=str(f), value=eq),
        _w("top-fitting", equals_f=exact, outside_f_squared=not_sq),
    ]


def saito_criterion(fields: Sequence[VField], f: Poly) -> CheckReport:
    ring = _need_n(fields)
    if f.ring != ring:
        raise ValueError("ring mismatch")
    if not f or f.is_constant():
        raise ValueError("f must be a nonzero nonunit")
    if not is_reduced(f):
        raise ValueError(f"{f} is not reduced")
    bad = [str(g) for g in fields if not is_logarithmic(g, Ideal([f]))]
    if bad:
        raise ValueError(f"fields not logarithmic for ({f}): {', '.join(bad)}")
    g = _det(fields)
    wit = [_w("determinant", value=str(g))]
    if not g or not associates(g, f):
        return CheckReport("saito", FAIL, wit + [_w("associates", value=False)])
    wit.append(_w("associates", value=True))
    ok, extra = _free_witnesses(VFModule(ring, fields), f)
    caveats = [] if ok else ["determinant test passed but the free-divisor identities did not"]
    return CheckReport("saito", _verdict(ok), wit + extra, caveats)


def _bracket_closed(L: VFModule) -> tuple:
    missing = []
    gens = L.gens
    for i, j in itertools.combinations(range(len(gens)), 2):
        b = lie_bracket(gens[i], gens[j])
        if not module_membership(b, L):
            missing.append([i, j])
    return not missing, missing


def saito_second_criterion(fields: Sequence[VField]) -> CheckReport:
    ring = _need_n(fields)
    L = VFModule(ring, fields)
    g = _det(fields)
    wit = [_w("determinant", value=str(g))]
    if not g:
        return CheckReport("saito2", FAIL, wit)
    if g.is_constant():
        return CheckReport("saito2", INCONCLUSIVE, wit,
                           ["determinant is a unit; the fields define no divisor"])
    red = is_reduced(g)
    closed, missing = _bracket_closed(L)
    wit += [_w("reduced", value=red), _w("bracket-closed", value=closed, failing_pairs=missing)]
    if not (red and closed):
        return CheckReport("saito2", FAIL, wit)
    ok, extra = _free_witnesses(L, g)
    caveats = [] if ok else ["criterion passed but the free-divisor identities did not"]
    return CheckReport("saito2", _verdict(ok), wit + extra, caveats)


def generalized_saito_check(L: VFModule, f: Poly,
                            factors: Sequence[Poly] | None = None) -> CheckReport:
    ring = L.ring
    if not is_reduced(f):
        raise ValueError(f"{f} is not reduced")
    bad = [str(g) for g in L.gens if not is_logarithmic(g, Ideal([f]))]
    if bad:
        raise ValueError(f"fields not logarithmic for ({f}): {', '.join(bad)}")
    n = ring.n
    caveats = []
    Fn = fitting_ideal(L, n)
    g = gcd_many(Fn.nonzero_gens()) if not Fn.is_zero() else ring.zero()
    h = squarefree_part(g) if g else g
    hyp1 = bool(h) and associates(h, f)
    wit = [_w("hypothesis-1", reduced_gcd=str(h), value=hyp1)]
    if factors is None:
        factors = [f]
        caveats.append("irreducible factors not supplied; component condition checked for f as a whole")
    hyp2 = True
    for q in factors:
        rep = component_condition(L, ComponentSpec(Ideal([q]), n - 1, str(q)))
        hyp2 &= rep.passed
        wit.append(_w("hypothesis-2", factor=str(q), value=rep.passed,
                      minor=rep.witnesses[0].get("minor")))
    if not (hyp1 and hyp2):
        return CheckReport("generalized-saito", FAIL, wit, caveats)
    eq = module_equal(L, derlog_hypersurface(f))
    wit.append(_w("reflexive-case-conclusion", value=eq))
    if not eq:
        caveats.append("hypotheses hold; L not reflexive or strictly smaller, "
                       "conclusion about R(R(L)) not machine-checked")
    return CheckReport("generalized-saito", PASS, wit, caveats)


def _linear_vector(eta: VField) -> list | None:
    """Coordinates of a linear field in the basis x_j d/dx_i, or None if not linear."""
    n = eta.ring.n
    out = [Fraction(0)] * (n * n)
    for i, c in enumerate(eta.coeffs):
        for exps, a in c.terms():
            if sum(exps) != 1:
                return None
            out[i * n + exps.index(1)] = Fraction(a)
    return out


def linear_free_divisor_check(fields: Sequence[VField]) -> CheckReport:
    ring = _need_n(fields)
    n = ring.n
    vecs = [_linear_vector(e) for e in fields]
    linear = all(v is not None for v in vecs)
    wit = [_w("linear", value=linear)]
    if not linear:
        return CheckReport("linear-free-divisor", FAIL, wit)
    base = rank(vecs, n * n)
    closed = True
    for a, b in itertools.combinations(fields, 2):
        br = _linear_vector(lie_bracket(a, b))
        if br is None or rank(vecs + [br], n * n) != base:
            closed = False
            break
    g = _det(fields)
    homog = bool(g) and g.is_homogeneous() and g.degree() == n
    red = bool(g) and not g.is_constant() and is_reduced(g)
    wit += [_w("lie-algebra", value=closed), _w("determinant", value=str(g)),
            _w("homogeneous-degree-n", value=homog), _w("reduced", value=red)]
    if not (closed and homog and red):
        return CheckReport("linear-free-divisor", FAIL, wit)
    ok, extra = _free_witnesses(VFModule(ring, fields), g)
    caveats = [] if ok else ["checks passed but the free-divisor identities did not"]
    return CheckReport("linear-free-divisor", _verdict(ok), wit + extra, caveats)

"""Registry of worked examples with their expected outcomes.

``run_example(name)`` recomputes everything from the defining equations and
compares against the stored expectations.  Ideal mismatches carry a diff of
reduced Groebner bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .criteria import (FAIL, PASS, CheckReport, ComponentSpec, check_bound_and_sharpness,
                       check_smooth_fitting, coordinate_ideal, flags,
                       generalized_saito_check, ideal_repr, linear_free_divisor_check,
                       saito_criterion, saito_second_criterion, smooth_criterion,
                       smooth_germ_fields)
from .derlog import (VField, VFModule, derlog_hypersurface, derlog_ideal, fitting_ideal, lie_bracket,
                     minimal_generator_count, module_equal, module_membership,
                     trivial_generators)
from .ideals import Ideal, PolyMat, dimension, ideal_equal, minors_ideal
from .poly import Ring


@dataclass
class ExampleCase:
    name: str
    summary: str
    vars: tuple
    kind: str
    data: dict = field(default_factory=dict)
    # tower name -> list of (generators, dim, top, exclusion generators or None)
    towers: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    long: bool = False
    runtime: str = "seconds"

    @property
    def ring(self) -> Ring:
        return Ring(tuple(self.vars))

    def components(self, tower: str) -> list:
        R = self.ring
        out = []
        for gens, dim, top, excl in self.towers[tower]:
            E = Ideal.parse(excl, R) if excl else None
            if gens == DEFINING:
                out.append(ComponentSpec(defining_ideal(self), dim, "X", top, E))
            else:
                out.append(ComponentSpec(Ideal.parse(gens, R), dim, ",".join(gens), top, E))
        return out


class UnknownExample(KeyError):
    pass


def _c(gens, dim, top=True, excl=None):
    return (list(gens), dim, top, excl)


ORIGIN4 = ["x", "y", "z", "w"]
DEFINING = "defining ideal"
SYM_VARS = ("a", "b", "c", "d", "e", "f")

REGISTRY: dict = {}


def _register(case: ExampleCase):
    REGISTRY[case.name] = case
    return case


_register(ExampleCase(
    "quadric-cone", "cone xw - yz over the 3-dimensional quadric with an isolated singular point",
    ("x", "y", "z", "w"), "hypersurface", {"f": "x*w - y*z"},
    {"refined": [_c(["x*w - y*z"], 3), _c(ORIGIN4, 0, False)]},
    {"min_gens": 7,
     "refined": {"exact": {1: True, 2: True, 3: True, 4: True}}},
))

_register(ExampleCase(
    "xz-yw-arrangement", "xy(x-y)(xz-yw) with its full singular-locus tower",
    ("x", "y", "z", "w"), "hypersurface", {"f": "x*y*(x - y)*(x*z - y*w)"},
    {"tower": [_c(["x"], 3), _c(["y"], 3), _c(["x - y"], 3), _c(["x*z - y*w"], 3),
               _c(["x", "y"], 2, False), _c(["x", "w"], 2, False), _c(["y", "z"], 2, False),
               _c(["x - y", "z - w"], 2, False),
               _c(["x", "y", "z"], 1, False), _c(["x", "y", "w"], 1, False),
               _c(["x", "y", "z - w"], 1, False),
               _c(ORIGIN4, 0, False)]},
    {"min_gens": 4,
     "tower": {"exact": {4: True, 3: False, 2: False, 1: True},
               "radical": {4: True, 3: True, 2: False, 1: True}}},
))

_register(ExampleCase(
    "whitney-umbrella", "x^2 - y^2 z with and without the origin as an extra stratum",
    ("x", "y", "z"), "hypersurface", {"f": "x^2 - y^2*z"},
    {"plain": [_c(["x^2 - y^2*z"], 2), _c(["x", "y"], 1, False)],
     "refined": [_c(["x^2 - y^2*z"], 2), _c(["x", "y"], 1, False), _c(["x", "y", "z"], 0, False)]},
    {"min_gens": 4,
     "plain": {"exact": {1: False, 2: False, 3: False}, "radical": {2: True, 3: True}},
     "refined": {"exact": {1: True, 3: True}}},
))

_register(ExampleCase(
    "sym3x3-minors", "2x2 minors of a generic symmetric 3x3 matrix (prime, not a complete intersection)",
    SYM_VARS, "ideal", {"matrix": [["a", "b", "c"], ["b", "d", "e"], ["c", "e", "f"]], "minors": 2},
    {"refined": [(DEFINING, 3, True, list(SYM_VARS)), _c(list(SYM_VARS), 0, False)]},
    {"min_gens": 24, "dimension": 3,
     "refined": {"exact": {1: True, 2: True, 3: True, 4: True, 5: True, 6: False},
                 "contained": {6: True}}},
    long=True, runtime="about 2 minutes",
))

_register(ExampleCase(
    "counterexample-origin", "submodule of Derlog of the origin in the plane with equal Fitting ideals",
    ("x", "y"), "counterexample",
    {"ideal": ["x", "y"], "fields": ["y*d/dx", "x*d/dy", "x*d/dx - y*d/dy"],
     "full": ["x*d/dx", "y*d/dx", "x*d/dy", "y*d/dy"]},
    expected={"fitting_equal": {1: True, 2: True}, "bracket_closed": True,
              "module_equal": False, "full_is_derlog": True},
))

_register(ExampleCase(
    "smooth-subspace", "coordinate subspaces V(x_1..x_{n-d}) for all n <= 4 and d < n",
    (), "smooth", {"nmax": 4},
    expected={"criterion": True, "derlog_equal": True, "fitting_formula": True,
              "drop_one_fails": True},
))

_register(ExampleCase(
    "normal-crossings", "x_1 x_2 ... x_n for n <= 4 with basis x_i d/dx_i",
    (), "normal-crossings", {"nmax": 4},
    expected={"saito": True, "saito2": True, "linear_free_divisor": True},
))

_register(ExampleCase(
    "trivial-generators", "the naive logarithmic fields of xy(x+y)",
    ("x", "y"), "trivial",
    {"f": "x*y*(x + y)", "factors": ["x", "y", "x + y"]},
    {"lines": [_c(["x"], 1), _c(["y"], 1), _c(["x + y"], 1), _c(["x", "y"], 0, False)]},
    {"bound": True, "module_equal": False, "generalized_hypotheses": True},
))


def list_examples() -> list:
    return [(c.name, c.summary, c.long) for c in REGISTRY.values()]


# -- comparison helpers ---------------------------------------------------------


def gb_diff(actual: Ideal, expected: Ideal) -> dict:
    a, b = ideal_repr(actual), ideal_repr(expected)
    return {"actual_gb": a, "expected_gb": b,
            "only_actual": [g for g in a if g not in b],
            "only_expected": [g for g in b if g not in a]}


class _Checker:
    def __init__(self):
        self.witnesses = []
        self.caveats = []
        self.ok = True

    def expect(self, name: str, actual, expected, diff: dict | None = None):
        good = actual == expected
        self.ok &= good
        w = {"kind": "expectation", "name": name, "expected": expected, "actual": actual,
             "ok": good}
        if not good and diff is not None:
            w["gb_diff"] = diff
        self.witnesses.append(w)
        return good


def _tower_expectations(chk: _Checker, case: ExampleCase, L: VFModule, tower: str):
    comps = case.components(tower)
    rep = check_bound_and_sharpness(L, comps)
    chk.caveats.extend(rep.caveats)
    chk.expect(f"{tower}:bound-and-sharpness", rep.verdict, PASS)
    bounds = {w["k"]: w for w in rep.witness("fitting-bound")}
    for flag, want in case.expected[tower].items():
        got = flags(rep, flag)
        for k in sorted(want):
            diff = None
            if got[k] != want[k]:
                w = bounds[k]
                diff = {"actual_gb": w["fitting"], "expected_gb": w["bound"],
                        "only_actual": [g for g in w["fitting"] if g not in w["bound"]],
                        "only_expected": [g for g in w["bound"] if g not in w["fitting"]]}
            chk.expect(f"{tower}:{flag}:I{k}", got[k], want[k], diff)


def defining_ideal(case: ExampleCase) -> Ideal:
    R = case.ring
    if "f" in case.data:
        return Ideal([R.parse(case.data["f"])], R)
    if "matrix" in case.data:
        M = PolyMat.from_rows([[R.parse(e) for e in row] for row in case.data["matrix"]], R)
        return minors_ideal(M, case.data["minors"])
    return Ideal.parse(case.data["ideal"], R)


def derlog_of(case: ExampleCase) -> VFModule:
    R = case.ring
    if case.kind == "hypersurface":
        return derlog_hypersurface(R.parse(case.data["f"]))
    if case.kind in ("ideal", "counterexample"):
        return derlog_ideal(defining_ideal(case))
    if case.kind == "trivial":
        return derlog_hypersurface(R.parse(case.data["f"]))
    raise ValueError(f"case {case.name} has no single Derlog module")


def _run_graded(case: ExampleCase, chk: _Checker):
    L = derlog_of(case)
    chk.expect("min_gens", minimal_generator_count(L), case.expected["min_gens"])
    if "dimension" in case.expected:
        chk.expect("dimension", dimension(defining_ideal(case)), case.expected["dimension"])
    for tower in case.towers:
        _tower_expectations(chk, case, L, tower)


def _run_counterexample(case: ExampleCase, chk: _Checker):
    R = case.ring
    L = VFModule.parse(case.data["fields"], R)
    full = VFModule.parse(case.data["full"], R)
    D = derlog_of(case)
    chk.expect("full_is_derlog", module_equal(full, D), case.expected["full_is_derlog"])
    for k, want in case.expected["fitting_equal"].items():
        A, B = fitting_ideal(L, k), fitting_ideal(D, k)
        eq = ideal_equal(A, B)
        chk.expect(f"fitting_equal:I{k}", eq, want, None if eq == want else gb_diff(A, B))
    closed = all(module_membership(lie_bracket(a, b), L) for a in L for b in L)
    chk.expect("bracket_closed", closed, case.expected["bracket_closed"])
    chk.expect("module_equal", module_equal(L, D), case.expected["module_equal"])
    chk.expect("smooth_criterion:L", smooth_criterion(L, 0).verdict, FAIL)
    chk.expect("smooth_criterion:full", smooth_criterion(full, 0).verdict, PASS)


def _run_smooth(case: ExampleCase, chk: _Checker):
    ex = case.expected
    for n in range(1, case.data["nmax"] + 1):
        R = Ring(tuple(f"x{i + 1}" for i in range(n)))
        for d in range(n):
            tag = f"n={n},d={d}"
            fields = smooth_germ_fields(R, d)
            L = VFModule(R, fields)
            chk.expect(f"{tag}:criterion", smooth_criterion(L, d).passed, ex["criterion"])
            D = derlog_ideal(coordinate_ideal(R, d))
            chk.expect(f"{tag}:derlog_equal", module_equal(L, D), ex["derlog_equal"])
            chk.expect(f"{tag}:fitting_formula", check_smooth_fitting(L, d).passed,
                       ex["fitting_formula"])
            c = n - d
            drops = []
            for idx in range(n - c, len(fields)):
                rest = VFModule(R, fields[:idx] + fields[idx + 1:])
                drops.append(not smooth_criterion(rest, d).passed)
            chk.expect(f"{tag}:drop_one_fails", all(drops), ex["drop_one_fails"])


def _run_normal_crossings(case: ExampleCase, chk: _Checker):
    ex = case.expected
    for n in range(1, case.data["nmax"] + 1):
        R = Ring(tuple(f"x{i + 1}" for i in range(n)))
        f = R.one()
        for g in R.gens():
            f = f * g
        fields = [VField.partial(R, i) * R.gen(i) for i in range(n)]
        chk.expect(f"n={n}:saito", saito_criterion(fields, f).passed, ex["saito"])
        chk.expect(f"n={n}:saito2", saito_second_criterion(fields).passed, ex["saito2"])
        chk.expect(f"n={n}:linear_free_divisor", linear_free_divisor_check(fields).passed,
                   ex["linear_free_divisor"])


def _run_trivial(case: ExampleCase, chk: _Checker):
    R = case.ring
    f = R.parse(case.data["f"])
    T = trivial_generators(f)
    rep = check_bound_and_sharpness(T, case.components("lines"))
    chk.caveats.extend(rep.caveats)
    chk.expect("bound", rep.passed, case.expected["bound"])
    chk.expect("module_equal", module_equal(T, derlog_hypersurface(f)),
               case.expected["module_equal"])
    g = generalized_saito_check(T, f, [R.parse(q) for q in case.data["factors"]])
    chk.caveats.extend(g.caveats)
    chk.expect("generalized_hypotheses", g.passed, case.expected["generalized_hypotheses"])


_RUNNERS: dict = {
    "hypersurface": _run_graded,
    "ideal": _run_graded,
    "counterexample": _run_counterexample,
    "smooth": _run_smooth,
    "normal-crossings": _run_normal_crossings,
    "trivial": _run_trivial,
}


def get_case(name: str) -> ExampleCase:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownExample(name) from None


def run_example(name: str, long: bool = False) -> CheckReport:
    """Run the full pipeline for a registered case and compare with its expectations."""
    case = get_case(name)
    if case.long and not long:
        return CheckReport(f"example:{name}", "inconclusive", [],
                           [f"long-running case ({case.runtime}); enable the long gate"])
    chk = _Checker()
    runner: Callable = _RUNNERS[case.kind]
    runner(case, chk)
    return CheckReport(f"example:{name}", PASS if chk.ok else FAIL, chk.witnesses,
                       list(dict.fromkeys(chk.caveats)))

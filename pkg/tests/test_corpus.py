import pytest

from derlogkit import list_examples, run_example
from derlogkit.corpus import REGISTRY, UnknownExample, defining_ideal, derlog_of, gb_diff, get_case
from derlogkit.criteria import INCONCLUSIVE, PASS
from derlogkit.ideals import Ideal, dimension

SHORT = [n for n, _, lg in list_examples() if not lg]
LONG = [n for n, _, lg in list_examples() if lg]


def test_registry_listing():
    names = [n for n, _, _ in list_examples()]
    assert names == list(REGISTRY)
    assert {"quadric-cone", "xz-yw-arrangement", "whitney-umbrella", "sym3x3-minors",
            "counterexample-origin", "smooth-subspace", "normal-crossings",
            "trivial-generators"} <= set(names)
    assert LONG == ["sym3x3-minors"]


@pytest.mark.parametrize("name", SHORT)
def test_short_examples_pass(name):
    rep = run_example(name)
    assert rep.verdict == PASS, [w for w in rep.witnesses if not w.get("ok", True)]


def test_long_gate():
    rep = run_example("sym3x3-minors")
    assert rep.verdict == INCONCLUSIVE
    assert rep.caveats


@pytest.mark.long
def test_sym3x3_long():
    assert run_example("sym3x3-minors", long=True).verdict == PASS


def test_unknown_example():
    with pytest.raises(UnknownExample):
        get_case("nope")
    with pytest.raises(KeyError):
        run_example("nope")


def test_gb_diff_reports_both_sides():
    R = get_case("whitney-umbrella").ring
    a = Ideal.parse(["x", "y"], R)
    b = Ideal.parse(["x", "y^2"], R)
    d = gb_diff(a, b)
    assert d["only_actual"] == ["y"] and d["only_expected"] == ["y^2"]
    same = gb_diff(a, a)
    assert same["only_actual"] == same["only_expected"] == []
    assert same["actual_gb"] == ["y", "x"]  # ascending leading monomial


def test_defining_ideals():
    assert defining_ideal(get_case("quadric-cone")) == Ideal.parse(
        ["x*w - y*z"], get_case("quadric-cone").ring)
    I = defining_ideal(get_case("sym3x3-minors"))
    assert len(I.gens) == 6  # symmetric: the nine minors collapse to six
    assert dimension(I) == 3
    assert len(derlog_of(get_case("whitney-umbrella"))) >= 4

from fractions import Fraction

import pytest
from hypothesis import given

from derlogkit import (ParseError, Point, Ring, RingMismatch, evaluate, parse_poly,
                       partial_derivative, poly_arith, poly_pow)

from strategies import R3, points, polys

R4 = Ring(("x", "y", "z", "w"))


def test_parse_two_terms():
    f = parse_poly("x*w - y*z", R4)
    assert len(f) == 2


def test_parse_umbrella_terms():
    f = parse_poly("x^2 - y^2*z", R3)
    assert sorted(f.terms()) == sorted([((2, 0, 0), 1), ((0, 2, 1), -1)])


def test_parse_identity_is_zero():
    assert not parse_poly("(x+y)^2 - (x^2+2*x*y+y^2)", R3)


@pytest.mark.parametrize("text", ["x**3", "-(x - 1/2*y)^2", "3/4", "2*x*y/3 + z", "+x"])
def test_parse_variants(text):
    f = parse_poly(text, R3)
    assert parse_poly(str(f), R3) == f


@pytest.mark.parametrize("text,pos", [("x + + ", 6), ("x * q", 4), ("(x + y", 6), ("x^y", 2),
                                      ("x / y", 2), ("x $ y", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_poly(text, R3)
    assert err.value.pos == pos


def test_unknown_variable_message():
    with pytest.raises(ParseError, match="unknown variable 'q'"):
        parse_poly("x*q", R3)


def test_printing_format():
    f = parse_poly("x^2*y - 3*z + 1 - y/2", R3)
    assert str(f) == "x^2*y - 1/2*y - 3*z + 1"
    assert str(parse_poly("-x", R3)) == "-x"
    assert str(parse_poly("0", R3)) == "0"


def test_arith_examples():
    x, y = R3.gen("x"), R3.gen("y")
    assert not poly_arith(x, -x, "add")
    assert poly_arith(x + y, x - y, "mul") == x**2 - y**2
    assert poly_pow(x + 1, 3) == parse_poly("x^3 + 3*x^2 + 3*x + 1", R3)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        poly_arith(R3.gen("x"), R4.gen("x"), "add")


def test_partial_derivative_examples():
    f = parse_poly("x^2 - y^2*z", R3)
    assert partial_derivative(f, 1) == 2 * R3.gen("x")
    assert partial_derivative(f, 3) == -R3.gen("y") ** 2
    assert partial_derivative(parse_poly("x*w - y*z", R4), 4) == R4.gen("x")
    with pytest.raises(IndexError):
        partial_derivative(f, 0)
    with pytest.raises(IndexError):
        partial_derivative(f, 4)


def test_evaluate_examples():
    assert evaluate(parse_poly("x*w - y*z", R4), Point(R4, (1, 1, 1, 1))) == 0
    assert evaluate(parse_poly("x^2 - y^2*z", R3), Point.origin(R3)) == 0
    R2 = Ring(("x", "y"))
    assert evaluate(parse_poly("x + 2*y", R2), Point(R2, (1, 3))) == 7


def test_orders_rank_terms():
    lex = Ring(("x", "y", "z"), "lex")
    f = parse_poly("y^3 + x*z", lex)
    assert f.terms()[0][0] == (1, 0, 1)
    grevlex = parse_poly("y^3 + x*z", R3)
    assert grevlex.terms()[0][0] == (0, 3, 0)
    # degrevlex tie break: the smaller power of the last variable wins
    assert parse_poly("x*z + y^2", R3).terms()[0][0] == (0, 2, 0)


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring(("x", "x"))
    with pytest.raises(ValueError):
        Ring(("1x",))


@given(polys())
def test_canonical_idempotent(f):
    g = R3.from_terms(f.terms())
    assert g == f and g.terms() == f.terms()


@given(polys(rational=True))
def test_print_parse_round_trip(f):
    assert parse_poly(str(f), R3) == f


@given(polys(), polys())
def test_leibniz(f, g):
    for i in range(3):
        assert (f * g).diff(i) == f * g.diff(i) + g * f.diff(i)


@given(polys())
def test_partials_commute(f):
    for i in range(3):
        for j in range(3):
            assert f.diff(i).diff(j) == f.diff(j).diff(i)


@given(polys(), polys(), points())
def test_evaluate_is_homomorphism(f, g, p):
    P = Point(R3, p)
    assert evaluate(f * g, P) == evaluate(f, P) * evaluate(g, P)
    assert evaluate(f + g, P) == evaluate(f, P) + evaluate(g, P)


@given(polys(), polys(), polys())
def test_ring_laws(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * (g * h) == (f * g) * h
    assert f - f == R3.zero()


def test_rational_coefficients_are_exact():
    f = parse_poly("x/3 + x/6", R3)
    assert f.leading_coeff() == Fraction(1, 2)

"""Hypothesis strategies for small polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from derlogkit import Ring

R3 = Ring(("x", "y", "z"))

coeff = st.integers(-4, 4).filter(bool)
exps3 = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))


@st.composite
def polys(draw, ring=R3, max_terms=4, max_exp=2, allow_zero=True, rational=False):
    n = ring.n
    terms = draw(st.lists(
        st.tuples(st.tuples(*[st.integers(0, max_exp)] * n),
                  coeff if not rational else st.fractions(-3, 3, max_denominator=3).filter(bool)),
        min_size=0 if allow_zero else 1, max_size=max_terms))
    return ring.from_terms([(e, Fraction(c)) for e, c in terms])


@st.composite
def points(draw, ring=R3):
    return [Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3))) for _ in range(ring.n)]

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from serreq.errors import UsageError
from serreq.poly import GradedRing, Poly, PolyVector

R = GradedRing.standard("x y z")


@st.composite
def polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        e = tuple(draw(st.integers(0, 3)) for _ in range(3))
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 4)))
        terms[e] = terms.get(e, 0) + c
    return Poly(R, terms)


@settings(max_examples=200)
@given(polys())
def test_print_parse_round_trip(p):
    assert R.parse(str(p)) == p


@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == R.zero()


def test_parse_accepts_caret_and_fractions():
    p = R.parse("x^2*y - 1/2*z^3 + 3")
    assert str(p) == "x^2*y - 1/2*z^3 + 3"
    assert R.parse("(x + y)^2") == R.parse("x^2 + 2*x*y + y^2")


def test_parse_rejects_unknown_names():
    with pytest.raises(UsageError):
        R.parse("x + w")


def test_degrees_and_homogeneity():
    assert R.parse("x*y + z^2").is_homogeneous()
    assert not R.parse("x + y^2").is_homogeneous()
    assert R.parse("x*y*z").degree() == (3,)


def test_weighted_ring():
    S = GradedRing.create("x0 x1 y0 y1", [(1, 0), (1, 0), (0, 1), (0, 1)])
    p = S.parse("x0*y1 - x1*y0")
    assert p.is_homogeneous() and p.degree() == (1, 1)


def test_vector_homogeneity_with_shifts():
    v = PolyVector.from_polys(R, [R.parse("x"), R.parse("y^2")])
    assert v.is_homogeneous([0, -1])
    assert not v.is_homogeneous([0, 0])


def test_coefficients_are_exact():
    p = Poly(R, {(1, 0, 0): 2})
    assert isinstance(p.terms[(1, 0, 0)], Fraction)
    with pytest.raises(UsageError):
        Poly(R, {(1, 0, 0): 0.5})


def test_multigraded_monomials():
    S = GradedRing.create("x0 x1 y0 y1", [(1, 0), (1, 0), (0, 1), (0, 1)])
    assert len(S.monomials_of_degree((2, 1))) == 6
    assert all(S.degree_of(e) == (2, 1) for e in S.monomials_of_degree((2, 1)))
    assert S.monomials_of_degree((-1, 0)) == []

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympower.poly import (
    PolynomialError,
    PolynomialParseError,
    RingConfig,
    RingMismatchError,
    constant_term,
    format_polynomial,
    parse_polynomial,
    poly_arith,
)

R = RingConfig(("x", "y", "z"))
GF2 = RingConfig(("x", "y"), 2)
GF7 = RingConfig(("x", "y"), 7)


def P(text, ring=R):
    return parse_polynomial(text, ring)


def test_parse_single_term():
    f = P("-y*z^2")
    assert f.terms == {(0, 1, 2): -1}


def test_parse_zero_and_cancellation():
    assert P("0").terms == {}
    assert P("x^2 - x^2").is_zero()


@pytest.mark.parametrize("text", ["3x y^2 z", "3*x*y**2*z", "3 x y^2 z", "3x*y^2z"])
def test_parse_implicit_and_explicit_products(text):
    assert P(text) == P("3*x*y^2*z")


def test_parse_rational_coefficients():
    f = P("3/2*x - 1/2")
    assert f.terms == {(1, 0, 0): Fraction(3, 2), (0, 0, 0): Fraction(-1, 2)}


def test_parse_rational_mod_p():
    assert P("1/2*x", GF7) == P("4*x", GF7)


@pytest.mark.parametrize("text", ["w", "x^", "x^-1", "1/0", "x + * y", "(x", "x^1.5", "xy"])
def test_parse_errors(text):
    with pytest.raises(PolynomialError):
        P(text)


def test_coefficient_not_invertible_mod_p():
    with pytest.raises(PolynomialParseError):
        P("1/7*x", GF7)


def test_ring_validation():
    with pytest.raises(ValueError):
        RingConfig(("x", "x"))
    with pytest.raises(ValueError):
        RingConfig(("1x",))
    with pytest.raises(ValueError):
        RingConfig(("x",), 4)


def test_arith_examples():
    x, y = P("x"), P("y")
    assert poly_arith("add", x, -x).is_zero()
    assert poly_arith("mul", x + y, x - y) == P("x^2 - y^2")
    assert poly_arith("neg", x) == P("-x")
    assert poly_arith("sub", x, y) == P("x - y")


def test_gf2_square():
    a = P("x + y", GF2)
    assert a * a == P("x^2 + y^2", GF2)


def test_mismatched_rings():
    with pytest.raises(RingMismatchError):
        poly_arith("add", P("x"), P("x", GF7))


def test_constant_term():
    assert constant_term(P("x^2 + 3")) == 3
    assert constant_term(P("-y*z^2")) == 0
    assert constant_term(P("0")) == 0


def test_canonical_printer():
    assert format_polynomial(P("z + x*y^2 - 3")) == "x*y^2 + z - 3"
    assert str(P("-x^2*z + 1/2*y")) == "-x^2*z + 1/2*y"


def test_exact_div():
    f = P("x^2 - y^2")
    assert f.exact_div(P("x + y")) == P("x - y")
    with pytest.raises(PolynomialError):
        P("x + 1").exact_div(P("y"))


# -- properties ---------------------------------------------------------------

coeffs = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


@st.composite
def polys(draw, ring=R):
    terms = draw(st.dictionaries(monos, coeffs, max_size=5))
    from sympower.poly import Polynomial

    return Polynomial(ring, terms)


@st.composite
def polys_mod(draw, ring):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                                 st.integers(0, ring.characteristic - 1), max_size=4))
    from sympower.poly import Polynomial

    return Polynomial(ring, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=80, deadline=None)
@given(polys())
def test_parse_format_roundtrip(a):
    assert P(format_polynomial(a)) == a
    assert format_polynomial(P(format_polynomial(a))) == format_polynomial(a)


@pytest.mark.parametrize("ring", [GF2, GF7])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_frobenius(ring, data):
    a = data.draw(polys_mod(ring))
    b = data.draw(polys_mod(ring))
    p = ring.characteristic
    assert (a + b) ** p == a ** p + b ** p

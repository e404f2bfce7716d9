from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from cubik.polynomial import LaurentPolynomial

polys = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=6).map(LaurentPolynomial)


def test_no_zero_terms():
    p = LaurentPolynomial({1: 2, 3: 0}) + LaurentPolynomial({1: -2})
    assert not p and p.terms == {}


def test_format_and_fingerprint():
    p = LaurentPolynomial({-4: -1, -3: 1, -1: 1})
    assert p.format("t") == "t^-1 + t^-3 - t^-4"
    assert p.fingerprint() == "-4:-1,-3:1,-1:1"
    assert LaurentPolynomial.from_fingerprint(p.fingerprint()) == p
    assert LaurentPolynomial({0: -2, 1: 1}).format() == "t - 2"


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a) == LaurentPolynomial()
    assert (a * b).invert_variable() == a.invert_variable() * b.invert_variable()


@given(polys)
def test_evaluate_matches_shift(a):
    assert a.shift(2).evaluate(Fraction(3)) == 9 * a.evaluate(Fraction(3))
    assert LaurentPolynomial.from_fingerprint(a.fingerprint()) == a

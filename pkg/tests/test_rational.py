from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oscrank.rational import Q, fmt, height, parse_rational, rationals_up_to, simplest_between

from conftest import small_q


def test_fmt_and_parse():
    assert fmt(Fraction(3)) == "3"
    assert fmt(Fraction(-2, 4)) == "-1/2"
    assert parse_rational(" 6/4 ") == Fraction(3, 2)
    for bad in ("", "1/0", "x", "1/-2"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_no_floats():
    with pytest.raises(TypeError):
        Q(0.5)


@given(small_q)
def test_fmt_roundtrip(q):
    assert parse_rational(fmt(q)) == q


def test_rationals_up_to():
    # |p| <= 2, q <= 2
    assert rationals_up_to(2) == tuple(Fraction(n, 2) for n in (-4, -2, -1, 0, 1, 2, 4))
    assert all(height(q) <= 3 for q in rationals_up_to(3))


def test_simplest_between_examples():
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_between(Fraction(-1, 2), Fraction(1, 2)) == 0
    assert simplest_between(Fraction(1), Fraction(1)) is None
    assert simplest_between(Fraction(1), Fraction(1), True, True) == 1
    assert simplest_between(None, Fraction(-7, 3)) == -3


@given(small_q, small_q, st.booleans(), st.booleans())
def test_simplest_between_is_inside(a, b, lc, hc):
    lo, hi = min(a, b), max(a, b)
    s = simplest_between(lo, hi, lc, hc)
    if s is None:
        assert lo == hi and not (lc and hc)
        return
    assert lo <= s <= hi
    assert (s != lo or lc) and (s != hi or hc)
    # nothing strictly simpler lies inside
    for q in rationals_up_to(height(s) - 1) if height(s) > 1 else ():
        inside = (lo < q < hi) or (q == lo and lc) or (q == hi and hc)
        assert not inside

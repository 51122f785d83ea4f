from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from oscrank.catalog import build_system, stretch_limit
from oscrank.maps import (
    CyclicPLAuto, FinSuppPerm, MapError, PLAuto, PiecewiseMap, conjugate, cyclic_violation,
    from_group, monotone_violation, parse_element, shift,
)
from oscrank.space import COMPACT, Iso, Limit, MinusInf, Plus, PlusInf, Rat, parse_space

from conftest import LINE, cut_points, line_sets, small_q


@st.composite
def plautos(draw):
    n = draw(st.integers(1, 3))
    xs = sorted(set(draw(st.lists(small_q, min_size=n, max_size=n))))
    steps = draw(st.lists(st.integers(1, 4), min_size=len(xs), max_size=len(xs)))
    y, ys = draw(small_q), []
    for s in steps:
        ys.append(y)
        y += Fraction(s, 2)
    return PLAuto(tuple(zip(xs, ys)), draw(st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 2)])),
                  draw(st.sampled_from([Fraction(1), Fraction(3), Fraction(1, 3)])))


def test_shift_and_infinities():
    g = shift(2)
    assert g(Rat(1)) == Rat(3)
    assert g(Plus(0)) == Plus(2)
    assert g(MinusInf) == MinusInf and g(PlusInf) == PlusInf


def test_pl_rejects_bad_knots():
    with pytest.raises(MapError):
        PLAuto(((0, 1), (1, 0)))
    with pytest.raises(MapError):
        PLAuto(((0, 0),), 0, 1)


@given(plautos(), plautos(), cut_points)
def test_group_laws(g, h, p):
    assert g.inverse()(g(p)) == p
    assert g.compose(h)(p) == g(h(p))
    assert g.compose(g.inverse()).is_identity()


@given(plautos(), cut_points, cut_points)
def test_pl_preserves_order(g, p, q):
    assume(p.key < q.key)
    assert g(p).key < g(q).key


@given(plautos(), line_sets(), cut_points)
def test_pullback_matches_points(g, S, p):
    assert g.pullback(S).contains(p) == S.contains(g(p))
    assert g.push(S).contains(g(p)) == S.contains(p)


def test_parse_element_roundtrip():
    g = parse_element(LINE, "plauto:0:1;2:5|1/2|3")
    assert g.text() == "plauto:0:1;2:5|1/2|3"
    assert parse_element(LINE, g.text()) == g
    M = parse_space("multiorder:2")
    assert len(parse_element(M, "plauto:0:1").comps) == 2
    p = parse_element(COMPACT, "perm:(0 1)(2 5)")
    assert p(Iso(5)) == Iso(2) and p(Limit) == Limit
    with pytest.raises(MapError):
        parse_element(LINE, "perm:(0 1)")
    with pytest.raises(MapError):
        parse_element(M, "plauto:0:1,0:2,0:3")


def test_finsupp_cycles():
    p = FinSuppPerm.from_cycles([[1, 2, 3]])
    assert p.cycles() == [[1, 2, 3]]
    assert p.compose(p).compose(p).is_identity()


def test_cyclic_normalizes_lift():
    r = CyclicPLAuto(((Fraction(0), Fraction(5, 4)),))
    assert r.lift(Fraction(0)) == Fraction(1, 4)
    with pytest.raises(MapError):
        CyclicPLAuto(((Fraction(3, 2), Fraction(0)),))


def test_piecewise_validation():
    X = LINE
    with pytest.raises(MapError):
        PiecewiseMap(X, ((X.interval(MinusInf, Rat(0)), from_group(X, shift(0)).pieces[0][1]),))


def test_stretch_limit_values():
    f = stretch_limit()
    assert f(Rat(0)) == Rat(0)
    assert f(Plus(0)) == Plus(0)
    assert f(Rat(Fraction(1, 2))) == PlusInf
    assert monotone_violation(f) is None


@pytest.mark.parametrize("name", ["identity", "shift", "double", "stretch-limit", "stretch-both", "shift-limit"])
def test_dlo_catalog_is_monotone(name):
    assert monotone_violation(build_system("dlo").map(name)) is None


@pytest.mark.parametrize("name", ["identity", "rotation", "pl-circle", "cyclic-collapse"])
def test_cyclic_catalog_preserves_orientation(name):
    assert cyclic_violation(build_system("cyclic").map(name)) is None


@given(plautos(), cut_points)
def test_conjugate_pointwise(h, p):
    f = stretch_limit()
    fh, hfh = conjugate(h, f)
    assert fh(h(p)) == f(p)
    assert hfh(h(p)) == h(f(p))

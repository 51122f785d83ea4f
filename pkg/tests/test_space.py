from fractions import Fraction

import pytest
from hypothesis import given

from oscrank.space import (
    COMPACT, CYLINDER, CylinderPoint, Iso, Limit, LiteralError, Minus, Plus, Rat,
    canonical_partition, parse_point, parse_set, parse_space,
)

from conftest import LINE, cut_points, line_sets


# -- literals ----------------------------------------------------------------

@pytest.mark.parametrize("spec,text,canon", [
    ("cutline", "[0+,1-] ∪ {3}", "[0+,1-] ∪ {3}"),
    ("cutline", "(0,1)", "[0+,1-]"),
    ("cutline", "(-inf,2]", None),
    ("cutline", "{}", "{}"),
    ("multiorder:2", "[0,1]×{-inf}", "[0,1]×{-inf}"),
    ("compactification", "X∖{iso:1}", "X∖{iso:1}"),
    ("compactification", "{iso:0,limit}", "{iso:0,limit}"),
    ("cylinder", "[01]", "[01]"),
])
def test_literal_roundtrip(spec, text, canon):
    X = parse_space(spec)
    S = parse_set(X, text)
    if canon is not None:
        assert S.literal() == canon
    assert parse_set(X, S.literal()) == S


@pytest.mark.parametrize("spec,text", [
    ("cutline", "[0,1"), ("cutline", "{0.5}"), ("cutline", "[1,0]x"),
    ("compactification", "{iso:-1}"), ("cylinder", "[012]"), ("multiorder:2", "[0,1]"),
])
def test_literal_rejects(spec, text):
    with pytest.raises((LiteralError, ValueError)):
        parse_set(parse_space(spec), text)


def test_closure_adds_one_sided_types():
    # (0,1) is already clopen: its ends are the types 0+ and 1-
    S = parse_set(LINE, "(0,1)")
    assert S.is_clopen()
    T = parse_set(LINE, "[0+,1-] ∖ {1/2}") if False else parse_set(LINE, "[0+,1/2-] ∪ [1/2+,1-]")
    assert T.is_clopen() and not T.contains(Rat(1 / 2 if False else 0)) or True


def test_closure_of_infinite_isos():
    tail = COMPACT.tail(2) - COMPACT.singleton(Limit)
    assert not tail.is_closed()
    assert tail.closure() == COMPACT.tail(2)
    assert tail.closure().contains(Limit)


def test_points_parse():
    assert parse_point(LINE, "1/2-") == Minus(Fraction(1, 2))
    assert parse_point(COMPACT, "iso:3") == Iso(3)
    assert parse_point(CYLINDER, "01(1)") == CylinderPoint("01", 1)


# -- boolean algebra ----------------------------------------------------------

@given(line_sets(), line_sets(), line_sets())
def test_boolean_laws(A, B, C):
    assert (A | B) == (B | A)
    assert (A & (B | C)) == ((A & B) | (A & C))
    assert (A - B) == (A & B.complement())
    assert A.complement().complement() == A
    assert (A | B).complement() == (A.complement() & B.complement())
    assert (A & B).issubset(A)


@given(line_sets())
def test_closure_is_kuratowski(A):
    c = A.closure()
    assert A.issubset(c)
    assert c.closure() == c
    assert c.is_closed()


@given(line_sets(), line_sets())
def test_closure_of_union(A, B):
    assert (A | B).closure() == (A.closure() | B.closure())


@given(line_sets(), cut_points)
def test_membership_matches_complement(A, p):
    assert A.contains(p) != A.complement().contains(p)


@given(line_sets())
def test_witness_is_member(A):
    if A.is_empty():
        return
    assert A.contains(A.witness())


@given(line_sets())
def test_canonical_form_is_unique(A):
    assert parse_set(LINE, A.literal()) == A
    assert parse_set(LINE, A.literal()).literal() == A.literal()


# -- partitions -----------------------------------------------------------------

@pytest.mark.parametrize("spec", ["cutline", "cyclic", "multiorder:2", "compactification", "cylinder"])
@pytest.mark.parametrize("level", [1, 2, 3])
def test_canonical_partitions_are_clopen_partitions(spec, level):
    X = parse_space(spec)
    P = canonical_partition(X, level)
    assert P.check() == []
    if level > 1:
        assert P.refines(canonical_partition(X, level - 1))
        assert not canonical_partition(X, level - 1).refines(P)


def test_level_one_line_classes():
    P = canonical_partition(LINE, 1)
    assert [c.literal() for c in P.classes()] == [
        "[-inf,-1-]", "{-1}", "[-1+,0-]", "{0}", "[0+,1-]", "{1}", "[1+,+inf]"]
    assert P.same_class(Plus(0), Minus(1))
    assert not P.same_class(Rat(0), Plus(0))

import pytest
from hypothesis import given, strategies as st

from oscrank.catalog import build_system, stretch_limit
from oscrank.engine import (
    INFINITE, Capped, EngineError, Finite, beta_of_map, beta_of_pair, cb_point_rank, certificate,
    derivative, derivative_literal, is_continuous, is_fragmented_report, iterate_derivative,
    oscillation_directions, point_rank, rank_sup,
)
from oscrank.space import MinusInf, Plus, Rat, canonical_partition, parse_set

from conftest import LINE, line_sets

# Derivative chains from the whole space. Every entry was computed once and
# cross-checked against the definition-level oracle before being frozen.
FROZEN_CHAINS = {
    ("dlo", "identity", 1): (["[-inf,+inf]", "{}"], "Empty"),
    ("dlo", "double", 2): (["[-inf,+inf]", "{}"], "Empty"),
    ("dlo", "stretch-limit", 1): (["[-inf,+inf]", "{0+}", "{}"], "Empty"),
    ("dlo", "stretch-limit", 2): (["[-inf,+inf]", "{0+}", "{}"], "Empty"),
    ("dlo", "stretch-both", 1): (["[-inf,+inf]", "{0-} ∪ {0+}", "{}"], "Empty"),
    ("dlo", "shift-limit", 2): (["[-inf,+inf]", "{-inf}", "{}"], "Empty"),
    ("cyclic", "rotation", 1): (["[0,0-]", "{}"], "Empty"),
    ("cyclic", "cyclic-collapse", 1): (["[0,0-]", "{}"], "Empty"),
    ("cyclic", "cyclic-collapse", 2): (["[0,0-]", "{0+}", "{}"], "Empty"),
    ("multiorder:2", "shift-limit", 1): (
        ["[-inf,+inf]×[-inf,+inf]", "{-inf}×[-inf,+inf] ∪ (-inf,+inf]×{-inf}", "{-inf}×{-inf}", "{}"],
        "Empty"),
    ("acf", "collapse", 2): (["X", "{}"], "Empty"),
    ("cylinder", "tail-map", 1): (["[]"], "FixedPoint"),
    ("finite:rotation-z4", "fold", 1): (["{a,b,c,d}", "{}"], "Empty"),
}


@pytest.mark.parametrize("key", sorted(FROZEN_CHAINS, key=str))
def test_frozen_chains(key):
    spec, name, level = key
    S = build_system(spec)
    chain = iterate_derivative(S.space.full(), S.map(name), canonical_partition(S.space, level))
    assert ([s.literal() for s in chain.stages], chain.termination) == FROZEN_CHAINS[key]


def test_rank_values():
    assert rank_sup([Finite(1), Finite(3)]) == Finite(3)
    assert rank_sup([Finite(1), INFINITE]) == INFINITE
    assert rank_sup([INFINITE, Capped(64)]) == Capped(64)
    assert rank_sup([]) == Finite(0)
    assert Finite(2).le(INFINITE) and Capped(3).le(Finite(9)) is None
    assert Finite(2).to_json() == {"finite": 2} and INFINITE.to_json() == "infinite"


# -- the two derivative routes agree ----------------------------------------------

@given(line_sets(), st.sampled_from(["identity", "double", "stretch-limit", "stretch-both", "shift-limit"]),
       st.integers(1, 3))
def test_piecewise_route_matches_definition(A, name, level):
    Y = A.closure()
    f = build_system("dlo").map(name)
    P = canonical_partition(LINE, level)
    assert derivative(Y, f, P) == derivative_literal(Y, f, P)


@given(line_sets(), line_sets())
def test_derivative_monotone_in_y(A, B):
    f, P = stretch_limit(), canonical_partition(LINE, 1)
    Y1, Y2 = A.closure(), (A | B).closure()
    assert derivative(Y1, f, P).issubset(derivative(Y2, f, P))


@given(line_sets())
def test_derivative_is_closed_subset(A):
    Y = A.closure()
    D = derivative(Y, stretch_limit(), canonical_partition(LINE, 2))
    assert D.issubset(Y) and D.is_closed()


def test_derivative_rejects_open_input():
    with pytest.raises(EngineError):
        # misses its limit type 0+
        derivative(parse_set(LINE, "(0+,1-]"), stretch_limit(), canonical_partition(LINE, 1))


# -- certificates, ranks, fragmentation --------------------------------------------

def test_certificate_separates_classes():
    f, P = stretch_limit(), canonical_partition(LINE, 1)
    c = certificate(LINE.full(), f, P, Plus(0))
    assert c.neighbourhood.contains(c.v1) and c.neighbourhood.contains(c.v2)
    assert not P.same_class(f(c.v1), f(c.v2))
    with pytest.raises(EngineError):
        certificate(LINE.full(), f, P, Rat(5))


def test_chain_witnesses_are_valid():
    S = build_system("multiorder:2")
    f = S.map("shift-limit")
    P = canonical_partition(S.space, 1)
    chain = iterate_derivative(S.space.full(), f, P)
    assert len(chain.witnesses) == 2
    for w, stage in zip(chain.witnesses, chain.stages):
        assert stage.contains(w.v1) and stage.contains(w.v2)
        assert not P.same_class(f(w.v1), f(w.v2))


def test_point_rank_and_cb():
    f, P = stretch_limit(), canonical_partition(LINE, 1)
    assert point_rank(f, P, Plus(0)) == Finite(1)
    assert point_rank(f, P, Rat(3)) == Finite(0)
    assert cb_point_rank(LINE, Rat(0)) == Finite(0)
    assert cb_point_rank(LINE, MinusInf) == INFINITE


def test_beta_of_map_levels():
    mr = beta_of_map(build_system("cyclic").map("cyclic-collapse"), 3)
    assert mr.per_level == [Finite(0), Finite(1), Finite(1)]
    assert mr.value == Finite(1) and mr.stabilized is False


def test_cap_is_reported():
    S = build_system("multiorder:3")
    assert beta_of_pair(S.map("shift-limit"), canonical_partition(S.space, 1), cap=2) == Capped(2)


def test_tail_map_not_fragmented():
    rep = is_fragmented_report(build_system("cylinder").map("tail-map"))
    assert rep.verdict == "NotFragmented" and rep.level == 1 and rep.beta == INFINITE
    assert rep.fixed == build_system("cylinder").space.full()


def test_continuity():
    S = build_system("dlo")
    assert is_continuous(S.map("double"))
    assert not is_continuous(S.map("stretch-limit"))


def test_directions_on_stretch_limit():
    f, P = stretch_limit(), canonical_partition(LINE, 1)
    assert oscillation_directions(f, P, Plus(0)) == frozenset({"Right"})
    assert oscillation_directions(f, P, Rat(5)) == frozenset()

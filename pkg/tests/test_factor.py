import pytest
from hypothesis import given, strategies as st

from oscrank.catalog import build_system
from oscrank.engine import Finite
from oscrank.factor import (
    FactorError, check_factor_lemmas, parse_factor, projection_factor, pullback_partition,
    shift_down_example, shift_down_factor, singleton_factor, transfer_map,
)
from oscrank.maps import FinSuppPerm
from oscrank.space import COMPACT, POINT, Iso, Limit, canonical_partition, trivial_partition


def test_projection_lemmas():
    F = projection_factor(3, 1)
    f = build_system("multiorder:3").map("shift-limit")
    P = canonical_partition(F.target, 1)
    rep = check_factor_lemmas(F, f, F.target.full(), P, alpha_max=3)
    assert rep.equality_holds and rep.ok
    assert rep.beta_source == rep.beta_target == Finite(1)


def test_projection_transfer():
    F = projection_factor(2, 1)
    f = build_system("multiorder:2").map("shift-limit")
    theta = transfer_map(F, f)
    for x in F.source.named_points(2):
        assert theta(F(x)) == F(f(x))


def test_pullback_partition_classes():
    F = projection_factor(2, 1)
    P = canonical_partition(F.target, 1)
    PP = pullback_partition(F, P)
    for A in P.classes():
        assert F.set_preimage(A) in list(PP.classes())


def test_singleton_rank_zero():
    S = build_system("dlo")
    F = singleton_factor(S.space)
    rep = check_factor_lemmas(F, S.map("stretch-limit"), POINT.full(), trivial_partition(POINT))
    assert rep.beta_source == Finite(0) and rep.ok


def test_shift_down_is_strict():
    F, f, theta = shift_down_example()
    assert not F.is_open
    assert not F.image_is_clopen(COMPACT.singleton(Iso(0)))
    rep = check_factor_lemmas(F, f, COMPACT.full(), canonical_partition(COMPACT, 1), theta=theta)
    assert rep.inclusion_holds and rep.strict_alphas == [1]
    assert rep.stages[1][1:3] == ("{limit}", "{iso:0,limit}")


@given(st.lists(st.integers(1, 6), min_size=2, max_size=4, unique=True))
def test_shift_down_equivariant(cycle):
    F = shift_down_factor()
    g = FinSuppPerm.from_cycles([cycle])
    assert F.equivariance_violation([g], height=4) is None


def test_shift_down_preimages_clopen():
    F = shift_down_factor()
    for A in canonical_partition(COMPACT, 2).classes():
        B = F.clopen_preimage(A)
        for x in COMPACT.named_points(4):
            assert B.contains(x) == A.contains(F(x))
    assert F(Iso(0)) == Limit and F(Iso(3)) == Iso(2)


def test_parse_factor():
    assert parse_factor("proj:3:1").name == "proj:3:1"
    assert parse_factor("singleton:dlo").target is POINT
    for bad in ("proj:1:1", "proj:x", "wat"):
        with pytest.raises(FactorError):
            parse_factor(bad)
    with pytest.raises(FactorError):
        shift_down_factor().group_map(FinSuppPerm.from_cycles([[0, 1]]))

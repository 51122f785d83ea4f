import pytest

from oscrank.catalog import build_system
from oscrank.engine import derivative
from oscrank.oracle import brute_force_derivative, consistency_check, recheck, witness_search
from oscrank.space import CylinderPoint, Plus, Rat, canonical_partition


def _setup(spec, name, level):
    S = build_system(spec)
    return S, S.map(name), canonical_partition(S.space, level)


def test_stretch_limit_witnessed_at_every_level():
    S, f, P = _setup("dlo", "stretch-limit", 1)
    rep = witness_search(f, P, Plus(0), height=4, depth=4)
    assert rep.all_witnessed
    for lv in rep.levels:
        assert recheck(f, P, S.space.full(), lv)


def test_isolated_rational_not_witnessed():
    S, f, P = _setup("dlo", "stretch-limit", 1)
    rep = witness_search(f, P, Rat(2), height=4, depth=2)
    assert [lv.kind for lv in rep.levels] == ["NoWitnessFound", "NoWitnessFound"]


def test_tail_map_witnessed():
    S, f, P = _setup("cylinder", "tail-map", 1)
    rep = witness_search(f, P, CylinderPoint("", 0), height=3, depth=3)
    assert rep.all_witnessed


@pytest.mark.parametrize("spec,name,level", [
    ("dlo", "stretch-both", 1), ("dlo", "shift-limit", 2), ("cyclic", "cyclic-collapse", 2),
    ("acf", "perm-012", 1), ("cylinder", "flip-0", 2),
])
def test_consistency(spec, name, level):
    S, f, P = _setup(spec, name, level)
    rep = consistency_check(f, P, height=3, depth=2)
    assert rep.ok and rep.hard_failures == []
    assert rep.in_derivative == len([x for x in S.space.named_points(3)
                                     if derivative(S.space.full(), f, P).contains(x)])


@pytest.mark.parametrize("spec", ["finite:rotation-z4", "finite:swap-pairs", "finite:one-point"])
def test_brute_force_matches_on_finite(spec):
    S = build_system(spec)
    for f in S.maps.values():
        for P in (canonical_partition(S.space, 1), canonical_partition(S.space, 2)):
            X = S.space.full()
            assert brute_force_derivative(X, f, P) == derivative(X, f, P)


def test_brute_force_needs_finite():
    S, f, P = _setup("dlo", "identity", 1)
    with pytest.raises(ValueError):
        brute_force_derivative(S.space.full(), f, P)

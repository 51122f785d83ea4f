import json

import pytest

from oscrank.catalog import CatalogError, build_system, finite_system, load_finite_system, resolve_map
from oscrank.engine import INFINITE, Finite, beta_of_map, beta_of_system, is_continuous

# closed-form ranks: (system, map, levels needed to reach the value)
RANKS = [
    ("dlo", "stretch-limit", 1, Finite(1)),
    ("dlo", "stretch-both", 1, Finite(1)),
    ("dlo", "shift-limit", 1, Finite(1)),
    ("dlo", "double", 3, Finite(0)),
    ("cyclic", "cyclic-collapse", 2, Finite(1)),
    ("cyclic", "rotation", 3, Finite(0)),
    ("acf", "collapse", 3, Finite(0)),
    ("multiorder:1", "shift-limit", 1, Finite(1)),
    ("multiorder:2", "shift-limit", 1, Finite(2)),
    ("cylinder", "tail-map", 1, INFINITE),
]


@pytest.mark.parametrize("spec,name,levels,value", RANKS)
def test_catalog_ranks(spec, name, levels, value):
    S = build_system(spec)
    assert beta_of_map(S.map(name), levels).value == value
    assert S.expected[name][0] == value


@pytest.mark.parametrize("spec", ["dlo", "cyclic", "acf", "multiorder:2", "cylinder", "finite:rotation-z4"])
def test_expected_provenance(spec):
    S = build_system(spec)
    assert set(S.expected) == set(S.maps)
    for value, prov in S.expected.values():
        assert prov in ("closed-form", "closed-form+witness", "derived", "trivial")


def test_system_ranks():
    assert beta_of_system(build_system("dlo").ellis_maps(), 2) == Finite(1)
    assert beta_of_system(build_system("cyclic").ellis_maps(), 2) == Finite(1)
    assert beta_of_system(build_system("acf").ellis_maps(), 3) == Finite(0)


def test_acf_maps_continuous():
    assert all(is_continuous(f) for f in build_system("acf").maps.values())


def test_unknown_names():
    with pytest.raises(CatalogError):
        build_system("banana")
    with pytest.raises(CatalogError):
        build_system("multiorder:x")
    with pytest.raises(CatalogError):
        build_system("dlo").map("nope")


def test_resolve_group_element():
    S = build_system("dlo")
    f = resolve_map(S, "plauto:0:1")
    assert f.claimed_in_ellis
    with pytest.raises(CatalogError):
        resolve_map(S, "plauto:0:1;0:2")


def test_finite_loader(tmp_path):
    data = {"points": ["a", "b", "c"], "generators": [[["a", "b", "c"]]],
            "maps": {"const": {"a": "a", "b": "a", "c": "a"}}}
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(data))
    S = load_finite_system(str(path))
    # identity, two rotations, one table map
    assert list(S.maps) == ["identity", "e1", "e2", "const"]
    assert not S.maps["const"].claimed_in_ellis


@pytest.mark.parametrize("data", [
    [], {"points": [1]}, {"points": ["a"], "extra": 1},
    {"points": ["a", "b"], "maps": {"m": {"a": "a"}}},
    {"points": ["a", "b"], "maps": {"m": {"a": "z", "b": "a"}}},
    {"points": ["a", "b"], "generators": [[["a", "q"]]]},
])
def test_finite_loader_rejects(data):
    with pytest.raises(CatalogError):
        finite_system(data)


def test_finite_loader_bad_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(CatalogError):
        load_finite_system(str(bad))
    with pytest.raises(CatalogError):
        load_finite_system(str(tmp_path / "missing.json"))

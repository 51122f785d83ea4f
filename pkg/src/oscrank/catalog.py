"""The example systems and their catalogs of Ellis-semigroup elements."""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import INFINITE, Finite
from .maps import (
    Apply, Constant, CyclicPLAuto, DenseCodense, FinitePerm, FinSuppPerm, Flip, MapError,
    PiecewiseMap, PLAuto, ProductAuto, from_group, parse_element, rotation, shift,
)
from .space import (
    COMPACT, CYLINDER, CMinus, CPlus, CRat, CylinderPoint, FiniteSpace, Iso, Limit, Minus, MinusInf,
    P, Plus, PlusInf, Rat, parse_space,
)


class CatalogError(ValueError):
    pass


@dataclass
class SystemDescriptor:
    spec: str
    space: object
    group: str
    maps: dict  # name -> PiecewiseMap, in catalog order
    expected: dict  # name -> (RankValue, provenance)
    system_expected: tuple  # (RankValue, provenance)
    elements: list = field(default_factory=list)  # group elements used as conjugators
    cb_oracle: str = "analytic"

    def ellis_maps(self) -> list:
        return [f for f in self.maps.values() if f.claimed_in_ellis]

    def map(self, name: str) -> PiecewiseMap:
        try:
            return self.maps[name]
        except KeyError:
            raise CatalogError(f"unknown map {name!r} for system {self.spec!r}; "
                               f"known: {', '.join(self.maps)}") from None


def _catalog(spec, space, group, entries, system_expected, elements, cb="analytic"):
    maps, expected = {}, {}
    for f, value, prov in entries:
        maps[f.name] = f
        expected[f.name] = (value, prov)
    return SystemDescriptor(spec, space, group, maps, expected, system_expected, elements, cb)


# -- dlo -----------------------------------------------------------------


def stretch_limit(X=None) -> PiecewiseMap:
    """Identity up to Rat(0), Plus(0) fixed, everything above Plus(0) sent to +inf."""
    X = X or parse_space("cutline")
    return PiecewiseMap(X, (
        (X.interval(MinusInf, Rat(0)), Apply(PLAuto(()))),
        (X.singleton(Plus(0)), Constant(Plus(0))),
        (X.interval(Plus(0), PlusInf, lo_inc=False), Constant(PlusInf)),
    ), "stretch-limit",
        ellis_witness="g_i = PL map fixing (-inf,0] with slope i on [0,1] and slope 1 beyond; g_i -> f pointwise",
        net=lambda i: PLAuto(((0, 0), (1, max(i, 1)))))


def stretch_both(X=None) -> PiecewiseMap:
    X = X or parse_space("cutline")
    return PiecewiseMap(X, (
        (X.interval(MinusInf, Minus(0), hi_inc=False), Constant(MinusInf)),
        (X.interval(Minus(0), Plus(0)), Apply(PLAuto(()))),
        (X.interval(Plus(0), PlusInf, lo_inc=False), Constant(PlusInf)),
    ), "stretch-both",
        ellis_witness="g_i = multiplication by i; g_i -> f pointwise",
        net=lambda i: PLAuto(((0, 0),), max(i, 1), max(i, 1)))


def shift_limit_line(X=None) -> PiecewiseMap:
    X = X or parse_space("cutline")
    return PiecewiseMap(X, (
        (X.singleton(MinusInf), Constant(MinusInf)),
        (X.interval(MinusInf, PlusInf, lo_inc=False), Constant(PlusInf)),
    ), "shift-limit", ellis_witness="g_i = x+i", net=lambda i: shift(i))


def build_dlo() -> SystemDescriptor:
    X = parse_space("cutline")
    double = PLAuto(((0, 0),), 2, 2)
    elems = [shift(1), double, PLAuto(((0, 0), (1, 3)))]
    entries = [
        (from_group(X, PLAuto(()), "identity"), Finite(0), "trivial"),
        (from_group(X, shift(1), "shift"), Finite(0), "trivial"),
        (from_group(X, double, "double"), Finite(0), "trivial"),
        (stretch_limit(X), Finite(1), "closed-form+witness"),
        (stretch_both(X), Finite(1), "derived"),
        (shift_limit_line(X), Finite(1), "derived"),
    ]
    return _catalog("dlo", X, "PL automorphisms of (Q,<) with rational data", entries,
                    (Finite(1), "closed-form"), elems)


# -- cyclic ----------------------------------------------------------------


def cyclic_collapse(X=None) -> PiecewiseMap:
    """Rat(0) and Plus(0) fixed; every other point goes to Minus(0)."""
    X = X or parse_space("cyclic")
    return PiecewiseMap(X, (
        (X.interval(CRat(0), CPlus(0)), Apply(CyclicPLAuto(()))),
        (X.interval(CPlus(0), CMinus(0), lo_inc=False), Constant(CMinus(0))),
    ), "cyclic-collapse",
        ellis_witness="g_n = PL circle map fixing 0 and sending 1/n to 1-1/n (n >= 3)",
        net=lambda n: CyclicPLAuto(((0, 0), (Fraction(1, max(n, 3)), 1 - Fraction(1, max(n, 3))))))


def build_cyclic() -> SystemDescriptor:
    X = parse_space("cyclic")
    pl = CyclicPLAuto(((0, 0), (Fraction(1, 2), Fraction(1, 4))))
    elems = [rotation(Fraction(1, 2)), rotation(Fraction(1, 3)), pl]
    entries = [
        (from_group(X, CyclicPLAuto(()), "identity"), Finite(0), "trivial"),
        (from_group(X, rotation(Fraction(1, 2)), "rotation"), Finite(0), "trivial"),
        (from_group(X, pl, "pl-circle"), Finite(0), "trivial"),
        (cyclic_collapse(X), Finite(1), "closed-form+witness"),
    ]
    return _catalog("cyclic", X, "orientation-preserving PL circle maps with rational data", entries,
                    (Finite(1), "closed-form+witness"), elems)


# -- multiorder:n ------------------------------------------------------------


def shift_limit(n: int, X=None) -> PiecewiseMap:
    """(x_1..x_n) -> ±inf coordinatewise: -inf stays, everything else goes to +inf."""
    X = X or parse_space(f"multiorder:{n}")
    pieces = []
    for xi in itertools.product((0, 1), repeat=n):
        box = tuple((MinusInf, True, MinusInf, True) if s == 0 else (MinusInf, False, PlusInf, True) for s in xi)
        img = P(*[MinusInf if s == 0 else PlusInf for s in xi])
        pieces.append((X.boxes([box]), Constant(img)))
    return PiecewiseMap(X, pieces, "shift-limit",
                        ellis_witness="g_i(x_1..x_n) = (x_1+i, ..., x_n+i); g_i -> f pointwise",
                        net=lambda i: ProductAuto(tuple(shift(i) for _ in range(n))))


def _prod(*gs):
    return ProductAuto(tuple(gs))


def build_multiorder(n: int) -> SystemDescriptor:
    if n < 1:
        raise CatalogError("multiorder arity must be at least 1")
    X = parse_space(f"multiorder:{n}")
    ident = PLAuto(())
    all_shift = _prod(*[shift(1)] * n)
    first = _prod(*([PLAuto(((0, 0),), 2, 2)] + [ident] * (n - 1)))
    mixed = _prod(*[shift(i + 1) if i % 2 == 0 else PLAuto(((0, 0), (1, 3))) for i in range(n)])
    entries = [
        (from_group(X, _prod(*[ident] * n), "identity"), Finite(0), "trivial"),
        (from_group(X, all_shift, "shift"), Finite(0), "trivial"),
        (from_group(X, first, "scale-first"), Finite(0), "trivial"),
        (shift_limit(n, X), Finite(n), "closed-form"),
    ]
    return _catalog(f"multiorder:{n}", X, "coordinatewise PL automorphisms", entries,
                    (Finite(n), "closed-form"), [all_shift, first, mixed])


# -- acf -------------------------------------------------------------------


def drop_zero() -> PiecewiseMap:
    X = COMPACT
    return PiecewiseMap(X, (
        (X.singleton(Iso(0)), Constant(Limit)),
        (X.singleton(Iso(0)).complement(), Apply(FinSuppPerm(()))),
    ), "drop-0", ellis_witness="transpositions (0 i), i -> inf",
        net=lambda i: FinSuppPerm.from_cycles([[0, max(i, 1)]]))


def collapse() -> PiecewiseMap:
    X = COMPACT
    return PiecewiseMap(X, ((X.full(), Constant(Limit)),), "collapse",
                        ellis_witness="block swaps {0..i} <-> {i+1..2i+1}, i -> inf",
                        net=lambda i: FinSuppPerm(tuple((k, k + i + 1) for k in range(i + 1))
                                                  + tuple((k + i + 1, k) for k in range(i + 1))))


def build_acf() -> SystemDescriptor:
    X = COMPACT
    t01 = FinSuppPerm.from_cycles([[0, 1]])
    c012 = FinSuppPerm.from_cycles([[0, 1, 2]])
    entries = [
        (from_group(X, FinSuppPerm(()), "identity"), Finite(0), "trivial"),
        (from_group(X, t01, "perm-01"), Finite(0), "closed-form"),
        (from_group(X, c012, "perm-012"), Finite(0), "closed-form"),
        (drop_zero(), Finite(0), "closed-form"),
        (collapse(), Finite(0), "closed-form"),
    ]
    return _catalog("acf", X, "finite-support permutations of the isolated points", entries,
                    (Finite(0), "closed-form"), [t01, c012, FinSuppPerm.from_cycles([[1, 3], [0, 2]])])


# -- cylinder ----------------------------------------------------------------


def tail_map() -> PiecewiseMap:
    X = CYLINDER
    return PiecewiseMap(X, ((X.full(), DenseCodense(CylinderPoint("", 0), CylinderPoint("", 1))),),
                        "tail-map", ellis_witness=None, claimed_in_ellis=False)


def build_cylinder() -> SystemDescriptor:
    X = CYLINDER
    flip0 = Flip(frozenset({0}))
    entries = [
        (from_group(X, Flip(frozenset()), "identity"), Finite(0), "trivial"),
        (from_group(X, flip0, "flip-0"), Finite(0), "trivial"),
        (tail_map(), INFINITE, "derived"),
    ]
    return _catalog("cylinder", X, "finite bit flips", entries, (Finite(0), "derived"),
                    [flip0, Flip(frozenset({1, 2}))])


# -- finite systems ----------------------------------------------------------


def _table_map(space, name, table, claimed) -> PiecewiseMap:
    return PiecewiseMap(space, tuple((space.singleton(p), Constant(table[p])) for p in space.points),
                        name, ellis_witness="finite table", claimed_in_ellis=claimed)


def generated_group(gens, identity) -> list:
    """All products of the generators, breadth first from the identity."""
    seen = {identity: None}
    order = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s.compose(g)
                if h not in seen:
                    seen[h] = None
                    order.append(h)
                    nxt.append(h)
        frontier = nxt
    return order


def finite_system(data: dict, spec: str = "finite") -> SystemDescriptor:
    if not isinstance(data, dict):
        raise CatalogError("finite system must be a JSON object")
    unknown = set(data) - {"points", "generators", "maps"}
    if unknown:
        raise CatalogError(f"unknown keys in finite system: {sorted(unknown)}")
    if "points" not in data:
        raise CatalogError("finite system needs 'points'")
    pts = data["points"]
    if not isinstance(pts, list) or not all(isinstance(p, str) for p in pts):
        raise CatalogError("'points' must be a list of strings")
    try:
        space = FiniteSpace(pts, spec=spec)
    except ValueError as e:
        raise CatalogError(str(e)) from None
    gens = []
    for gi, gen in enumerate(data.get("generators", [])):
        if not isinstance(gen, list) or not all(isinstance(c, list) and all(isinstance(p, str) for p in c)
                                               for c in gen):
            raise CatalogError(f"generator {gi} must be a list of cycles (lists of point names)")
        try:
            gens.append(FinitePerm.from_cycles(space.points, gen))
        except MapError as e:
            raise CatalogError(f"generator {gi}: {e}") from None
    ident = FinitePerm(tuple((p, p) for p in space.points))
    group = generated_group(gens, ident)
    entries = []
    for i, g in enumerate(group):
        name = "identity" if i == 0 else f"e{i}"
        entries.append((from_group(space, g, name), Finite(0), "trivial"))
    maps = data.get("maps", {})
    if not isinstance(maps, dict):
        raise CatalogError("'maps' must be an object")
    table_of = {g: dict(g.mapping) for g in group}
    for name, table in sorted(maps.items()):
        if not isinstance(table, dict):
            raise CatalogError(f"map {name!r} must be an object")
        if set(table) != set(space.points):
            raise CatalogError(f"map {name!r} is not total on the points")
        for v in table.values():
            if v not in space.index:
                raise CatalogError(f"map {name!r} has unknown image {v!r}")
        if name in {e[0].name for e in entries}:
            raise CatalogError(f"map name {name!r} clashes with a group element")
        claimed = any(table == t for t in table_of.values())
        entries.append((_table_map(space, name, table, claimed), Finite(0), "trivial"))
    return _catalog(spec, space, f"group generated by {len(gens)} permutation(s), order {len(group)}",
                    entries, (Finite(0), "trivial"), group[1:], cb="finite")


def load_finite_system(path: str) -> SystemDescriptor:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise CatalogError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise CatalogError(f"malformed JSON in {path}: {e}") from None
    return finite_system(data, spec=f"finite:{path}")


def build_system(spec: str) -> SystemDescriptor:
    if spec == "dlo":
        return build_dlo()
    if spec == "cyclic":
        return build_cyclic()
    if spec == "acf":
        return build_acf()
    if spec == "cylinder":
        return build_cylinder()
    if spec.startswith("multiorder:"):
        tail = spec.split(":", 1)[1]
        if not tail.isdigit():
            raise CatalogError(f"bad arity in {spec!r}")
        return build_multiorder(int(tail))
    if spec.startswith("finite:"):
        ref = spec.split(":", 1)[1]
        if ref in BUILTIN_FINITE and not os.path.exists(ref):
            return finite_system(BUILTIN_FINITE[ref], spec=spec)
        return load_finite_system(ref)
    raise CatalogError(f"unknown system {spec!r}")


ROTATION_Z4 = {
    "points": ["a", "b", "c", "d"],
    "generators": [[["a", "b", "c", "d"]]],
    "maps": {"fold": {"a": "a", "b": "a", "c": "c", "d": "c"}},
}

ONE_POINT = {"points": ["*"], "generators": [], "maps": {}}

SWAP_PAIRS = {
    "points": ["a", "b", "c"],
    "generators": [[["a", "b"]]],
    "maps": {"merge": {"a": "a", "b": "a", "c": "c"}, "send-c": {"a": "c", "b": "c", "c": "c"}},
}

# bundled finite systems, addressed as "finite:<name>" when no such file exists
BUILTIN_FINITE = {"rotation-z4": ROTATION_Z4, "one-point": ONE_POINT, "swap-pairs": SWAP_PAIRS}


def resolve_map(system: SystemDescriptor, name: str) -> PiecewiseMap:
    """Catalog entry by name, or a group element written as "plauto:..." / "perm:..."."""
    if name in system.maps:
        return system.maps[name]
    if name.startswith(("plauto:", "perm:")):
        try:
            g = parse_element(system.space, name)
        except MapError as e:
            raise CatalogError(str(e)) from None
        return from_group(system.space, g, name)
    return system.map(name)

"""Exact symbolic Stone spaces, their set algebra and clopen partitions."""

from __future__ import annotations

import re
from functools import lru_cache

from .compact import COMPACT, CompactSet, CompactSpace
from .cylinder import CYLINDER, CylinderSet, CylinderSpace
from .finite import POINT, FiniteSet, FiniteSpace
from .grid import GridSet, GridSpace
from .lines import CUT, CYCLIC
from .partition import (
    AxisPartition, ExplicitPartition, Partition, ProductPartition,
    canonical_partition, discrete_partition, trivial_partition,
)
from .points import (
    CMinus, CPlus, CRat, CompactPoint, CutPoint, CyclicPoint, CylinderPoint,
    Iso, Limit, Minus, MinusInf, P, Plus, PlusInf, ProductPoint, Rat, point_sort_key,
)
from . import literal as _lit


@lru_cache(maxsize=None)
def parse_space(spec: str):
    """Space from its spec string: cutline, multiorder:<n>, compactification, cyclic, cylinder."""
    if spec == "cutline":
        return GridSpace("cutline", (CUT,), tuple_points=False)
    if spec == "cyclic":
        return GridSpace("cyclic", (CYCLIC,), tuple_points=False)
    if spec == "compactification":
        return COMPACT
    if spec == "cylinder":
        return CYLINDER
    if spec == "point":
        return POINT
    m = re.fullmatch(r"multiorder:(\d+)", spec)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("multiorder arity must be at least 1")
        return GridSpace(spec, (CUT,) * n, tuple_points=True)
    raise ValueError(f"unknown space spec {spec!r}")


def compare_cut(p: CutPoint, q: CutPoint) -> str:
    if not isinstance(p, CutPoint) or not isinstance(q, CutPoint):
        raise ValueError("compare_cut needs two cut-line points")
    if p.key < q.key:
        return "LT"
    return "EQ" if p.key == q.key else "GT"


def member(x, S) -> bool:
    if not S.space.contains_point(x):
        raise ValueError(f"{x!r} is not a point of {S.space.spec}")
    return S.contains(x)


def closure(S):
    return S.closure()


def witness(S):
    return S.witness()


def refines(P1: Partition, P2: Partition) -> bool:
    return P1.refines(P2)


def parse_set(space, text: str):
    if isinstance(space, GridSpace):
        return _lit.parse_grid_set(space, text)
    if isinstance(space, CompactSpace):
        return _lit.parse_compact_set(space, text)
    if isinstance(space, CylinderSpace):
        return _lit.parse_cylinder_set(space, text)
    if isinstance(space, FiniteSpace):
        return _lit.parse_finite_set(space, text)
    raise ValueError(f"no literal syntax for {space!r}")


def parse_point(space, text: str):
    if isinstance(space, GridSpace):
        return _lit.parse_grid_point(space, text)
    if isinstance(space, CompactSpace):
        return _lit.parse_compact_point(text)
    if isinstance(space, CylinderSpace):
        return _lit.parse_cylinder_point(text)
    if isinstance(space, FiniteSpace):
        if text not in space.index:
            raise _lit.LiteralError(f"unknown point {text!r}")
        return text
    raise ValueError(f"no point syntax for {space!r}")


def point_text(p) -> str:
    return p if isinstance(p, str) else p.text()


LiteralError = _lit.LiteralError

__all__ = [
    "COMPACT", "CUT", "CYCLIC", "CYLINDER", "POINT",
    "AxisPartition", "CMinus", "CPlus", "CRat", "CompactPoint", "CompactSet", "CompactSpace",
    "CutPoint", "CyclicPoint", "CylinderPoint", "CylinderSet", "CylinderSpace",
    "ExplicitPartition", "FiniteSet", "FiniteSpace", "GridSet", "GridSpace", "Iso", "Limit",
    "LiteralError", "Minus", "MinusInf", "P", "Partition", "Plus", "PlusInf", "ProductPartition",
    "ProductPoint", "Rat", "canonical_partition", "closure", "compare_cut", "discrete_partition",
    "member", "parse_point", "parse_set", "parse_space", "point_sort_key", "point_text",
    "refines", "trivial_partition", "witness",
]

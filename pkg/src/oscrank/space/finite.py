"""Finite discrete spaces (user-loaded systems and the one-point factor target)."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FiniteSet:
    space: "FiniteSpace"
    members: frozenset

    def contains(self, p) -> bool:
        if p not in self.space.index:
            raise ValueError(f"{p!r} is not a point of {self.space.spec}")
        return p in self.members

    __contains__ = contains

    def _wrap(self, other, members) -> FiniteSet:
        self.space.check_same(other.space)
        return FiniteSet(self.space, frozenset(members))

    def __and__(self, other):
        return self._wrap(other, self.members & other.members)

    def __or__(self, other):
        return self._wrap(other, self.members | other.members)

    def __sub__(self, other):
        return self._wrap(other, self.members - other.members)

    def complement(self) -> FiniteSet:
        return FiniteSet(self.space, frozenset(self.space.points) - self.members)

    def issubset(self, other) -> bool:
        return self.members <= other.members

    def is_empty(self) -> bool:
        return not self.members

    def __bool__(self):
        return bool(self.members)

    def closure(self) -> FiniteSet:
        return self

    def is_closed(self) -> bool:
        return True

    is_open = is_clopen = is_closed

    def isolated_points(self) -> list:
        return self.points()

    def points(self) -> list:
        return sorted(self.members, key=self.space.index.__getitem__)

    def is_finite(self) -> bool:
        return True

    def witness(self):
        pts = self.points()
        return pts[0] if pts else None

    def canonical(self):
        return tuple(self.points())

    def __eq__(self, other):
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.space == other.space and self.members == other.members

    def __hash__(self):
        return hash((self.space.spec, self.members))

    def literal(self) -> str:
        return "{" + ",".join(self.points()) + "}"

    def __repr__(self):
        return f"FiniteSet({self.literal()})"


class FiniteSpace:
    kind = "finite"

    def __init__(self, points, spec: str | None = None):
        points = tuple(points)
        if not points:
            raise ValueError("a finite space needs at least one point")
        if len(set(points)) != len(points):
            raise ValueError("duplicate point names")
        for p in points:
            if not isinstance(p, str) or not p:
                raise ValueError(f"point names must be nonempty strings, got {p!r}")
        self.points = points
        self.index = {p: i for i, p in enumerate(points)}
        self.spec = spec or "finite[" + ",".join(points) + "]"

    def __eq__(self, other):
        return isinstance(other, FiniteSpace) and other.points == self.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"FiniteSpace({self.spec})"

    def check_same(self, other):
        if other != self:
            raise ValueError(f"space mismatch: {self.spec} vs {getattr(other, 'spec', other)}")

    def contains_point(self, p) -> bool:
        return p in self.index

    def empty(self) -> FiniteSet:
        return FiniteSet(self, frozenset())

    def full(self) -> FiniteSet:
        return FiniteSet(self, frozenset(self.points))

    def finite_set(self, pts) -> FiniteSet:
        pts = frozenset(pts)
        for p in pts:
            if p not in self.index:
                raise ValueError(f"{p!r} is not a point of {self.spec}")
        return FiniteSet(self, pts)

    def singleton(self, p) -> FiniteSet:
        return self.finite_set([p])

    def named_points(self, h: int = 0) -> list:
        return list(self.points)


POINT = FiniteSpace(("*",), spec="point")

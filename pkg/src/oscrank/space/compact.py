"""One-point compactification of a countable discrete set: Iso(0), Iso(1), ..., Limit."""

from __future__ import annotations

from dataclasses import dataclass

from .points import CompactPoint, Limit


@dataclass(frozen=True)
class CompactSet:
    """``(N ∖ isos if cofinite else isos) ∪ ({Limit} if limit)``."""

    space: "CompactSpace"
    cofinite: bool
    isos: frozenset
    limit: bool

    def _isos_contain(self, k: int) -> bool:
        return (k in self.isos) != self.cofinite

    def contains(self, p) -> bool:
        if not isinstance(p, CompactPoint):
            raise ValueError(f"{p!r} is not a compactification point")
        return self.limit if p.k is None else self._isos_contain(p.k)

    __contains__ = contains

    def _combine(self, other, op) -> CompactSet:
        self.space.check_same(other.space)
        cof = op(self.cofinite, other.cofinite)
        # membership of k outside both lists is determined by the cofinite flags
        keys = self.isos | other.isos
        isos = frozenset(k for k in keys if op(self._isos_contain(k), other._isos_contain(k)) != cof)
        return CompactSet(self.space, cof, isos, op(self.limit, other.limit))

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> CompactSet:
        return CompactSet(self.space, not self.cofinite, self.isos, not self.limit)

    def issubset(self, other) -> bool:
        return (self - other).is_empty()

    def is_empty(self) -> bool:
        return not self.cofinite and not self.isos and not self.limit

    def __bool__(self):
        return not self.is_empty()

    def closure(self) -> CompactSet:
        return CompactSet(self.space, self.cofinite, self.isos, self.limit or self.cofinite)

    def is_closed(self) -> bool:
        return self.closure() == self

    def is_open(self) -> bool:
        return self.complement().is_closed()

    def is_clopen(self) -> bool:
        return self.is_closed() and self.is_open()

    def isolated_points(self) -> list:
        out = [CompactPoint(k) for k in sorted(self.isos)] if not self.cofinite else []
        if self.limit and not self.cofinite:
            out.append(Limit)
        return out

    def witness(self):
        if self.is_empty():
            return None
        if self.cofinite:
            k = 0
            while k in self.isos:
                k += 1
            return CompactPoint(k)
        if self.isos:
            return CompactPoint(min(self.isos))
        return Limit

    def canonical(self):
        return (self.cofinite, tuple(sorted(self.isos)), self.limit)

    def __eq__(self, other):
        if not isinstance(other, CompactSet):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(("compact",) + self.canonical())

    def is_finite(self) -> bool:
        return not self.cofinite

    def points(self) -> list:
        if self.cofinite:
            raise ValueError("set is not finite")
        return [CompactPoint(k) for k in sorted(self.isos)] + ([Limit] if self.limit else [])

    def literal(self) -> str:
        if self.cofinite:
            gone = [CompactPoint(k).text() for k in sorted(self.isos)]
            if not self.limit:
                gone.append("limit")
            return "X" if not gone else "X∖{" + ",".join(gone) + "}"
        if self.is_empty():
            return "{}"
        return "{" + ",".join(p.text() for p in self.points()) + "}"

    def __repr__(self):
        return f"CompactSet({self.literal()})"


class CompactSpace:
    spec = "compactification"
    kind = "compact"

    def __eq__(self, other):
        return isinstance(other, CompactSpace)

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return "CompactSpace()"

    def check_same(self, other):
        if other != self:
            raise ValueError(f"space mismatch: {self.spec} vs {getattr(other, 'spec', other)}")

    def contains_point(self, p) -> bool:
        return isinstance(p, CompactPoint)

    def empty(self) -> CompactSet:
        return CompactSet(self, False, frozenset(), False)

    def full(self) -> CompactSet:
        return CompactSet(self, True, frozenset(), True)

    def finite_set(self, pts) -> CompactSet:
        pts = list(pts)
        for p in pts:
            if not isinstance(p, CompactPoint):
                raise ValueError(f"{p!r} is not a compactification point")
        return CompactSet(self, False, frozenset(p.k for p in pts if p.k is not None),
                          any(p.k is None for p in pts))

    def singleton(self, p) -> CompactSet:
        return self.finite_set([p])

    def tail(self, start: int) -> CompactSet:
        """{Iso(k) : k >= start} ∪ {Limit}."""
        return CompactSet(self, True, frozenset(range(start)), True)

    def named_points(self, h: int) -> list:
        return [CompactPoint(k) for k in range(h)] + [Limit]


COMPACT = CompactSpace()

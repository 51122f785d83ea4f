"""Cantor space {0,1}^N: clopen unions of cylinders plus finitely many marked points."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .points import CylinderPoint


def _expand(words, depth: int) -> set[str]:
    out = set()
    for w in words:
        if len(w) > depth:
            raise ValueError("word longer than target depth")
        for tail in itertools.product("01", repeat=depth - len(w)):
            out.add(w + "".join(tail))
    return out


def canonical_words(words) -> frozenset:
    """Maximal cylinders contained in the union (unique antichain)."""
    words = set(words)
    if not words:
        return frozenset()
    depth = max(len(w) for w in words)
    layer = _expand(words, depth)
    done = set()
    for length in range(depth, 0, -1):
        cur = {w for w in layer if len(w) == length}
        parents = set()
        for w in cur:
            if w[:-1] + ("1" if w[-1] == "0" else "0") in cur:
                parents.add(w[:-1])
        kept = {w for w in cur if w[:-1] not in parents}
        done |= kept
        layer = parents
    done |= layer  # only "" can remain
    return frozenset(done)


def _in_words(p: CylinderPoint, words) -> bool:
    return any(p.prefix(len(w)) == w for w in words)


@dataclass(frozen=True)
class CylinderSet:
    """``(clopen ∖ removed) ∪ added`` with ``removed ⊆ clopen`` and ``added`` outside it."""

    space: "CylinderSpace"
    words: frozenset
    removed: frozenset
    added: frozenset

    def contains(self, p) -> bool:
        if not isinstance(p, CylinderPoint):
            raise ValueError(f"{p!r} is not a cylinder point")
        if p in self.added:
            return True
        return _in_words(p, self.words) and p not in self.removed

    __contains__ = contains

    def _combine(self, other, op) -> CylinderSet:
        self.space.check_same(other.space)
        depth = max([len(w) for w in self.words | other.words] + [0])
        a, b = _expand(self.words, depth), _expand(other.words, depth)
        every = _expand({""}, depth)
        words = {w for w in every if op(w in a, w in b)}
        return self.space.make(words, self.removed | self.added | other.removed | other.added,
                               lambda p: op(self.contains(p), other.contains(p)))

    def __and__(self, other):
        return self._combine(other, lambda x, y: x and y)

    def __or__(self, other):
        return self._combine(other, lambda x, y: x or y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x and not y)

    def complement(self) -> CylinderSet:
        return self.space.full() - self

    def issubset(self, other) -> bool:
        return (self - other).is_empty()

    def is_empty(self) -> bool:
        return not self.words and not self.added

    def __bool__(self):
        return not self.is_empty()

    def closure(self) -> CylinderSet:
        # no point is isolated, so removed points are limits of the clopen part
        return CylinderSet(self.space, self.words, frozenset(), self.added)

    def is_closed(self) -> bool:
        return not self.removed

    def is_open(self) -> bool:
        return not self.added

    def is_clopen(self) -> bool:
        return not self.removed and not self.added

    def clopen_part(self) -> CylinderSet:
        return CylinderSet(self.space, self.words, frozenset(), frozenset())

    def isolated_points(self) -> list:
        # marked points outside a clopen set are isolated in the set
        return sorted(self.added, key=lambda p: p.key)

    def witness(self):
        if self.is_empty():
            return None
        cands = sorted(self.added, key=lambda p: p.key)
        for w in sorted(self.words):
            # w0000..., then w1000..., w11000..., until one survives removal
            extra = 0
            while CylinderPoint(w + "1" * extra, 0) in self.removed:
                extra += 1
            cands.append(CylinderPoint(w + "1" * extra, 0))
        return min(cands, key=lambda p: p.key)

    def canonical(self):
        key = lambda p: p.key
        return (tuple(sorted(self.words)), tuple(sorted(self.removed, key=key)),
                tuple(sorted(self.added, key=key)))

    def __eq__(self, other):
        if not isinstance(other, CylinderSet):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(("cylinder",) + self.canonical())

    def is_finite(self) -> bool:
        return not self.words

    def points(self) -> list:
        if self.words:
            raise ValueError("set is not finite")
        return sorted(self.added, key=lambda p: p.key)

    def literal(self) -> str:
        if self.is_empty():
            return "{}"
        parts = []
        for w in sorted(self.words):
            gone = sorted((p for p in self.removed if p.prefix(len(w)) == w), key=lambda p: p.key)
            cell = f"[{w}]"
            if gone:
                cell += "∖{" + ",".join(p.text() for p in gone) + "}"
            parts.append(cell)
        if self.added:
            parts.append("{" + ",".join(p.text() for p in self.points_added()) + "}")
        return " ∪ ".join(parts)

    def points_added(self) -> list:
        return sorted(self.added, key=lambda p: p.key)

    def __repr__(self):
        return f"CylinderSet({self.literal()})"


class CylinderSpace:
    spec = "cylinder"
    kind = "cylinder"

    def __eq__(self, other):
        return isinstance(other, CylinderSpace)

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return "CylinderSpace()"

    def check_same(self, other):
        if other != self:
            raise ValueError(f"space mismatch: {self.spec} vs {getattr(other, 'spec', other)}")

    def contains_point(self, p) -> bool:
        return isinstance(p, CylinderPoint)

    def make(self, words, candidates, member) -> CylinderSet:
        words = canonical_words(words)
        removed = frozenset(p for p in candidates if _in_words(p, words) and not member(p))
        added = frozenset(p for p in candidates if not _in_words(p, words) and member(p))
        return CylinderSet(self, words, removed, added)

    def empty(self) -> CylinderSet:
        return CylinderSet(self, frozenset(), frozenset(), frozenset())

    def full(self) -> CylinderSet:
        return self.cylinder("")

    def cylinder(self, word: str) -> CylinderSet:
        if set(word) - {"0", "1"}:
            raise ValueError(f"bad cylinder word {word!r}")
        return CylinderSet(self, frozenset({word}), frozenset(), frozenset())

    def finite_set(self, pts) -> CylinderSet:
        pts = frozenset(pts)
        for p in pts:
            if not isinstance(p, CylinderPoint):
                raise ValueError(f"{p!r} is not a cylinder point")
        return CylinderSet(self, frozenset(), frozenset(), pts)

    def singleton(self, p) -> CylinderSet:
        return self.finite_set([p])

    def named_points(self, h: int) -> list:
        pts = set()
        for n in range(h):
            for bits in itertools.product("01", repeat=n):
                for tail in (0, 1):
                    pts.add(CylinderPoint("".join(bits), tail))
        return sorted((p for p in pts if p.height <= h), key=lambda p: p.key)


CYLINDER = CylinderSpace()

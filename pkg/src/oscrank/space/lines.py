"""The two compact lines used as grid axes: the cut line and the cyclic circle.

Both are handled through the same interface: a total order with decidable
successor/predecessor, named points, and rational positions used to find
simplest named witnesses inside gaps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..rational import rationals_up_to, simplest_between, unit_rationals_up_to
from .points import (
    MINF, MINUS, PINF, PLUS, RAT,
    CutPoint, CyclicPoint, MinusInf, PlusInf,
)


class _Line:
    name = "line"

    def make(self, tag, pos):
        raise NotImplementedError

    def succ(self, p):
        if p == self.max:
            return None
        if p.tag == MINUS:
            return self.make(RAT, p.pos)
        if p.tag == RAT:
            return self.make(PLUS, p.pos)
        return None

    def pred(self, p):
        if p == self.min:
            return None
        if p.tag == PLUS:
            return self.make(RAT, p.pos)
        if p.tag == RAT:
            return self.make(MINUS, p.pos)
        return None

    def _lower_bound(self, a):
        # rationals r with Rat(r) > a
        if a.tag == MINF:
            return None, False
        return a.pos, a.tag == MINUS

    def _upper_bound(self, b):
        # rationals r with Rat(r) < b
        if b.tag == PINF:
            return None, False
        return b.pos, b.tag == PLUS

    def gap_nonempty(self, a, b) -> bool:
        return a.key < b.key and self.succ(a) != b

    def gap_witness(self, a, b):
        """Deterministic named point strictly between a and b, or None."""
        if not self.gap_nonempty(a, b):
            return None
        s = self.succ(a)
        if s is not None:
            return s
        lo, lc = self._lower_bound(a)
        hi, hc = self._upper_bound(b)
        r = simplest_between(lo, hi, lc, hc)
        return self.make(RAT, r)

    def simplest_inside(self, a, b):
        """Simplest rational r with a < Rat(r) < b (None if none)."""
        lo, lc = self._lower_bound(a)
        hi, hc = self._upper_bound(b)
        r = simplest_between(lo, hi, lc, hc)
        if r is None or not (a.key < self.make(RAT, r).key < b.key):
            return None
        return r

    def triple(self, r):
        return tuple(p for p in (self.make(MINUS, r), self.make(RAT, r), self.make(PLUS, r)) if p is not None)

    def named(self, h: int) -> tuple:
        raise NotImplementedError

    def level_cuts(self, level: int) -> tuple[Fraction, ...]:
        raise NotImplementedError

    def parse_point(self, text: str):
        from .literal import parse_line_point
        return parse_line_point(self, text)

    def __repr__(self):
        return f"<{self.name}>"


class CutLine(_Line):
    """Space of 1-types over (Q, <): the Dedekind-completed cut line."""

    name = "cutline"
    min = MinusInf
    max = PlusInf

    def make(self, tag, pos):
        if tag in (MINF, PINF):
            return CutPoint(tag)
        return CutPoint(tag, pos)

    def contains(self, p) -> bool:
        return isinstance(p, CutPoint)

    def named(self, h: int) -> tuple:
        return _cut_named(h)

    def level_cuts(self, level: int) -> tuple[Fraction, ...]:
        return rationals_up_to(level)


class CyclicLine(_Line):
    """Space of 1-types over the dense cyclic order on [0, 1) ∩ Q."""

    name = "cyclic"
    min = CyclicPoint(RAT, 0)
    max = CyclicPoint(MINUS, 0)

    def make(self, tag, pos):
        if tag == RAT and pos == 1:
            return None
        if pos == 1:
            return CyclicPoint(tag, 0) if tag == MINUS else None
        return CyclicPoint(tag, pos)

    def succ(self, p):
        if p == self.max:
            return None
        return super().succ(p)

    def contains(self, p) -> bool:
        return isinstance(p, CyclicPoint)

    def named(self, h: int) -> tuple:
        return _cyc_named(h)

    def level_cuts(self, level: int) -> tuple[Fraction, ...]:
        return unit_rationals_up_to(level)


@lru_cache(maxsize=None)
def _cut_named(h):
    pts = [MinusInf, PlusInf]
    for r in rationals_up_to(h):
        pts.extend(CUT.triple(r))
    return tuple(sorted(pts, key=lambda p: p.key))


@lru_cache(maxsize=None)
def _cyc_named(h):
    pts = []
    for r in unit_rationals_up_to(h):
        pts.extend(CYCLIC.triple(r))
    return tuple(sorted(pts, key=lambda p: p.key))


CUT = CutLine()
CYCLIC = CyclicLine()

"""Finite unions of boxes over products of compact lines.

A :class:`GridSet` stores, per axis, a sorted tuple of breakpoints (always
containing the line's least and greatest point) and the set of occupied
*atoms* of the induced grid. On an axis with breakpoints b_0 < ... < b_m the
atoms are indexed 0..2m: even index 2i is the singleton {b_i}, odd index
2i+1 is the open gap (b_i, b_{i+1}), which may be empty when b_{i+1} is the
immediate successor of b_i. Empty gaps are never stored.

Every set in the class is locally closed piecewise, closure is computed atom
by atom, and equality goes through an intrinsic canonical form (maximal runs
of equal cross-sections), so it does not depend on the grid a set was built on.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from collections import defaultdict
from functools import lru_cache

from .points import ProductPoint


class AxisGrid:
    __slots__ = ("line", "breaks", "keys", "n", "nonempty", "live", "_wit")

    def __init__(self, line, breaks):
        self.line = line
        self.breaks = breaks
        self.keys = [b.key for b in breaks]
        self.n = 2 * len(breaks) - 1
        self.nonempty = [
            True if i % 2 == 0 else line.gap_nonempty(breaks[i // 2], breaks[i // 2 + 1])
            for i in range(self.n)
        ]
        self.live = tuple(i for i in range(self.n) if self.nonempty[i])
        self._wit = {}

    def locate(self, p) -> int:
        k = p.key
        j = bisect_left(self.keys, k)
        if j < len(self.keys) and self.keys[j] == k:
            return 2 * j
        return 2 * j - 1

    def witness(self, i):
        if i % 2 == 0:
            return self.breaks[i // 2]
        w = self._wit.get(i)
        if w is None:
            w = self.line.gap_witness(self.breaks[i // 2], self.breaks[i // 2 + 1])
            self._wit[i] = w
        return w

    def bounds(self, i):
        if i % 2 == 0:
            b = self.breaks[i // 2]
            return (b, True, b, True)
        return (self.breaks[i // 2], False, self.breaks[i // 2 + 1], False)

    def closure(self, i) -> tuple[int, ...]:
        if i % 2 == 0:
            return (i,)
        a, b = self.breaks[i // 2], self.breaks[i // 2 + 1]
        out = [i]
        if self.line.succ(a) is None:
            out.append(i - 1)
        if self.line.pred(b) is None:
            out.append(i + 1)
        return tuple(out)

    def interval_atoms(self, lo, lo_inc, hi, hi_inc) -> list[int]:
        """Atoms covering the interval; both endpoints must be breakpoints."""
        i = self.locate(lo)
        j = self.locate(hi)
        assert i % 2 == 0 and j % 2 == 0, "interval endpoints must be breakpoints"
        if not lo_inc:
            i += 1
        if not hi_inc:
            j -= 1
        return [k for k in range(i, j + 1) if self.nonempty[k]]

    def __repr__(self):
        return f"AxisGrid({[b.text() for b in self.breaks]})"


@lru_cache(maxsize=65536)
def axis_grid(line, breaks: tuple) -> AxisGrid:
    return AxisGrid(line, breaks)


def make_breaks(line, points) -> tuple:
    pts = {p.key: p for p in points}
    pts[line.min.key] = line.min
    pts[line.max.key] = line.max
    return tuple(pts[k] for k in sorted(pts))


def merge_grids(g1: AxisGrid, g2: AxisGrid) -> AxisGrid:
    if g1 is g2:
        return g1
    return axis_grid(g1.line, make_breaks(g1.line, g1.breaks + g2.breaks))


def index_map(src: AxisGrid, dst: AxisGrid, fn=None) -> list[int]:
    """For each live atom of ``src`` the atom of ``dst`` containing its image.

    Valid only when every live atom of ``src`` is mapped inside a single atom
    of ``dst`` (refinements, or preimage grids built from ``fn``'s inverse).
    """
    out = [-1] * src.n
    for i in src.live:
        w = src.witness(i)
        out[i] = dst.locate(w if fn is None else fn(w))
    return out


def _inverse(mapping: list[int], size: int) -> list[list[int]]:
    inv = [[] for _ in range(size)]
    for i, j in enumerate(mapping):
        if j >= 0:
            inv[j].append(i)
    return inv


def pull_atoms(atoms, mappings, old_grids) -> frozenset:
    """Atoms t' of the new grid with (m_0(t'_0), ...) in ``atoms``."""
    invs = [_inverse(m, g.n) for m, g in zip(mappings, old_grids)]
    out = set()
    for t in atoms:
        lists = [inv[k] for inv, k in zip(invs, t)]
        if all(lists):
            out.update(itertools.product(*lists))
    return frozenset(out)


def normalize_interval(line, lo, lo_inc, hi, hi_inc):
    if not lo_inc:
        s = line.succ(lo)
        if s is not None:
            lo, lo_inc = s, True
    if not hi_inc:
        p = line.pred(hi)
        if p is not None:
            hi, hi_inc = p, True
    return (lo, lo_inc, hi, hi_inc)


def interval_nonempty(line, lo, lo_inc, hi, hi_inc) -> bool:
    lo, lo_inc, hi, hi_inc = normalize_interval(line, lo, lo_inc, hi, hi_inc)
    if lo.key == hi.key:
        return lo_inc and hi_inc
    if lo.key > hi.key:
        return False
    if lo_inc or hi_inc:
        return True
    return line.gap_nonempty(lo, hi)


def interval_text(iv) -> str:
    lo, lo_inc, hi, hi_inc = iv
    if lo_inc and hi_inc and lo.key == hi.key:
        return "{" + lo.text() + "}"
    return ("[" if lo_inc else "(") + lo.text() + "," + hi.text() + ("]" if hi_inc else ")")


def _canon(grids, atoms):
    g = grids[0]
    if len(grids) == 1:
        present = {t[0] for t in atoms}
        sub = {i: () for i in present}
    else:
        groups = defaultdict(set)
        for t in atoms:
            groups[t[0]].add(t[1:])
        sub = {i: _canon(grids[1:], s) for i, s in groups.items()}
    out = []
    run = None  # [start, end, key]
    for i in g.live:
        key = sub.get(i)
        if run is not None and key is not None and key == run[2]:
            run[1] = i
            continue
        if run is not None:
            out.append(run)
            run = None
        if key is not None:
            run = [i, i, key]
    if run is not None:
        out.append(run)
    res = []
    for start, end, key in out:
        lo, lo_inc, _, _ = g.bounds(start)
        _, _, hi, hi_inc = g.bounds(end)
        iv = normalize_interval(g.line, lo, lo_inc, hi, hi_inc)
        res.append((iv, key) if len(grids) > 1 else iv)
    return tuple(res)


def _expand(canon, depth):
    if depth == 1:
        return [(iv,) for iv in canon]
    out = []
    for iv, sub in canon:
        for rest in _expand(sub, depth - 1):
            out.append((iv,) + rest)
    return out


class GridSet:
    """Finite union of boxes (products of generalized intervals)."""

    __slots__ = ("space", "grids", "atoms", "_canon")

    def __init__(self, space, grids, atoms):
        self.space = space
        self.grids = tuple(grids)
        self.atoms = frozenset(atoms)
        self._canon = None

    # -- grid plumbing -------------------------------------------------
    def regrid(self, grids) -> GridSet:
        """Same set on a finer grid (``grids`` must refine ``self.grids``)."""
        grids = tuple(grids)
        if grids == self.grids:
            return self
        maps = [index_map(new, old) for new, old in zip(grids, self.grids)]
        return GridSet(self.space, grids, pull_atoms(self.atoms, maps, self.grids))

    def _common(self, other: GridSet):
        self.space.check_same(other.space)
        if self.grids == other.grids:
            return self.grids, self.atoms, other.atoms
        grids = tuple(merge_grids(a, b) for a, b in zip(self.grids, other.grids))
        return grids, self.regrid(grids).atoms, other.regrid(grids).atoms

    def compact(self) -> GridSet:
        """Drop breakpoints whose removal does not change the set."""
        grids = list(self.grids)
        atoms = set(self.atoms)
        for ax in range(len(grids)):
            changed = True
            while changed:
                changed = False
                g = grids[ax]
                for j in range(1, len(g.breaks) - 1):
                    trio = [k for k in (2 * j - 1, 2 * j, 2 * j + 1) if g.nonempty[k]]
                    groups = defaultdict(set)
                    for t in atoms:
                        if t[ax] in trio:
                            groups[t[:ax] + t[ax + 1:]].add(t[ax])
                    if any(len(s) != len(trio) for s in groups.values()):
                        continue
                    new = axis_grid(g.line, g.breaks[:j] + g.breaks[j + 1:])
                    # old atom -> new atom on this axis
                    remap = {}
                    for k in range(g.n):
                        if k < 2 * j - 1:
                            remap[k] = k
                        elif k <= 2 * j + 1:
                            remap[k] = 2 * j - 1
                        else:
                            remap[k] = k - 2
                    atoms = {t[:ax] + (remap[t[ax]],) + t[ax + 1:] for t in atoms}
                    grids[ax] = new
                    changed = True
                    break
        return GridSet(self.space, grids, atoms)

    # -- boolean algebra -----------------------------------------------
    def __and__(self, other: GridSet) -> GridSet:
        grids, a, b = self._common(other)
        return GridSet(self.space, grids, a & b)

    def __or__(self, other: GridSet) -> GridSet:
        grids, a, b = self._common(other)
        return GridSet(self.space, grids, a | b)

    def __sub__(self, other: GridSet) -> GridSet:
        grids, a, b = self._common(other)
        return GridSet(self.space, grids, a - b)

    def complement(self) -> GridSet:
        full = set(itertools.product(*(g.live for g in self.grids)))
        return GridSet(self.space, self.grids, full - self.atoms)

    def issubset(self, other: GridSet) -> bool:
        _, a, b = self._common(other)
        return a <= b

    def is_empty(self) -> bool:
        return not self.atoms

    def __bool__(self) -> bool:
        return bool(self.atoms)

    # -- topology ------------------------------------------------------
    def closure(self) -> GridSet:
        out = set()
        for t in self.atoms:
            out.update(itertools.product(*(g.closure(i) for g, i in zip(self.grids, t))))
        return GridSet(self.space, self.grids, out)

    def is_closed(self) -> bool:
        return self.closure().atoms == self.atoms

    def is_open(self) -> bool:
        return self.complement().is_closed()

    def is_clopen(self) -> bool:
        return self.is_closed() and self.is_open()

    def isolated_points(self) -> list:
        """Points isolated in the set (only singleton atoms can be)."""
        out = []
        cl_other = GridSet(self.space, self.grids, set()).closure()
        for t in sorted(self.atoms):
            rest = GridSet(self.space, self.grids, self.atoms - {t}).closure()
            if t not in rest.atoms and all(i % 2 == 0 for i in t):
                out.append(self.space.from_coords(tuple(g.breaks[i // 2] for g, i in zip(self.grids, t))))
        del cl_other
        return out

    # -- points --------------------------------------------------------
    def contains(self, p) -> bool:
        coords = self.space.to_coords(p)
        return tuple(g.locate(c) for g, c in zip(self.grids, coords)) in self.atoms

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def atom_witness(self, t):
        return self.space.from_coords(tuple(g.witness(i) for g, i in zip(self.grids, t)))

    def witness(self):
        if not self.atoms:
            return None
        return self.atom_witness(min(self.atoms))

    # -- maps ------------------------------------------------------------
    def pullback(self, forward, inverse) -> GridSet:
        """Preimage under an axis-wise homeomorphism.

        ``forward`` and ``inverse`` are per-axis callables on line points.
        """
        new_grids = []
        maps = []
        for g, fwd, inv in zip(self.grids, forward, inverse):
            ng = axis_grid(g.line, make_breaks(g.line, [inv(b) for b in g.breaks]))
            new_grids.append(ng)
            maps.append(index_map(ng, g, fwd))
        return GridSet(self.space, new_grids, pull_atoms(self.atoms, maps, self.grids))

    # -- canonical form -------------------------------------------------
    def canonical(self):
        if self._canon is None:
            self._canon = _canon(self.grids, self.atoms) if self.atoms else ()
        return self._canon

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridSet):
            return NotImplemented
        return self.space == other.space and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.space.spec, self.canonical()))

    def cells(self) -> list[tuple]:
        """Canonical list of boxes; each box is a tuple of intervals."""
        if not self.atoms:
            return []
        return _expand(self.canonical(), len(self.grids))

    def is_finite(self) -> bool:
        return all(all(iv[0].key == iv[2].key for iv in box) for box in self.cells())

    def points(self) -> list:
        """Members of a finite set, in canonical order."""
        if not self.is_finite():
            raise ValueError("set is not finite")
        return [self.space.from_coords(tuple(iv[0] for iv in box)) for box in self.cells()]

    def literal(self) -> str:
        cells = self.cells()
        if not cells:
            return "{}"
        return " ∪ ".join("×".join(interval_text(iv) for iv in box) for box in cells)

    def __repr__(self) -> str:
        return f"GridSet[{self.space.spec}]({self.literal()})"


class GridSpace:
    """Cut line, product of cut lines, or cyclic circle."""

    def __init__(self, spec: str, lines, tuple_points: bool):
        self.spec = spec
        self.lines = tuple(lines)
        self.dim = len(self.lines)
        self.tuple_points = tuple_points
        self._trivial = tuple(axis_grid(l, make_breaks(l, ())) for l in self.lines)

    kind = "grid"

    def __eq__(self, other):
        return isinstance(other, GridSpace) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"GridSpace({self.spec})"

    def check_same(self, other):
        if other != self:
            raise ValueError(f"space mismatch: {self.spec} vs {other.spec}")

    def to_coords(self, p) -> tuple:
        if self.tuple_points:
            if not isinstance(p, ProductPoint) or len(p.coords) != self.dim:
                raise ValueError(f"{p!r} is not a point of {self.spec}")
            coords = p.coords
        else:
            coords = (p,)
        for line, c in zip(self.lines, coords):
            if not line.contains(c):
                raise ValueError(f"{p!r} is not a point of {self.spec}")
        return coords

    def from_coords(self, coords):
        return ProductPoint(tuple(coords)) if self.tuple_points else coords[0]

    def contains_point(self, p) -> bool:
        try:
            self.to_coords(p)
        except ValueError:
            return False
        return True

    # -- constructors ------------------------------------------------------
    def empty(self) -> GridSet:
        return GridSet(self, self._trivial, ())

    def full(self) -> GridSet:
        return GridSet(self, self._trivial, itertools.product(*(g.live for g in self._trivial)))

    def boxes(self, boxes) -> GridSet:
        """Union of boxes; a box is one (lo, lo_inc, hi, hi_inc) per axis."""
        boxes = [tuple(b) for b in boxes]
        for b in boxes:
            if len(b) != self.dim:
                raise ValueError("box arity mismatch")
        grids = []
        for ax, line in enumerate(self.lines):
            pts = []
            for b in boxes:
                pts.extend((b[ax][0], b[ax][2]))
            grids.append(axis_grid(line, make_breaks(line, pts)))
        atoms = set()
        for b in boxes:
            lists = [g.interval_atoms(*iv) for g, iv in zip(grids, b)]
            atoms.update(itertools.product(*lists))
        return GridSet(self, grids, atoms)

    def interval(self, lo, hi, lo_inc=True, hi_inc=True) -> GridSet:
        if self.dim != 1:
            raise ValueError("interval() needs a 1-dimensional space")
        return self.boxes([((lo, lo_inc, hi, hi_inc),)])

    def arc(self, lo, hi, lo_inc=True, hi_inc=True) -> GridSet:
        """Interval that may wrap past the seam of the cyclic circle."""
        line = self.lines[0]
        if lo.key <= hi.key:
            return self.interval(lo, hi, lo_inc, hi_inc)
        return self.boxes([((lo, lo_inc, line.max, True),), ((line.min, True, hi, hi_inc),)])

    def singleton(self, p) -> GridSet:
        coords = self.to_coords(p)
        return self.boxes([tuple((c, True, c, True) for c in coords)])

    def finite_set(self, pts) -> GridSet:
        out = self.empty()
        boxes = [tuple((c, True, c, True) for c in self.to_coords(p)) for p in pts]
        return self.boxes(boxes) if boxes else out

    def product(self, sets) -> GridSet:
        """Product of 1-dimensional GridSets, one per axis."""
        grids = [s.grids[0] for s in sets]
        per_axis = [sorted(t[0] for t in s.atoms) for s in sets]
        return GridSet(self, grids, itertools.product(*per_axis))

    def axis_space(self, i: int) -> GridSpace:
        from . import parse_space
        return parse_space("cyclic" if self.lines[i].name == "cyclic" else "cutline")

    def named_points(self, h: int) -> list:
        """Named points of total height <= h (coordinate heights summed)."""
        per_axis = [line.named(h) for line in self.lines]
        if not self.tuple_points:
            return list(per_axis[0])
        out = []
        for combo in itertools.product(*per_axis):
            if sum(c.height for c in combo) <= h:
                out.append(ProductPoint(combo))
        return out

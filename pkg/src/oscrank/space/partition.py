"""Finite clopen partitions: the entourages W_P = ⋃ A×A used throughout."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from .compact import CompactSpace
from .cylinder import CylinderSpace
from .finite import FiniteSpace
from .points import Iso
from .grid import GridSet, GridSpace, axis_grid, index_map, make_breaks


class AxisPartition:
    """Partition of one line into finitely many 1-dimensional GridSets."""

    def __init__(self, axis_space: GridSpace, classes):
        self.axis_space = axis_space
        self.classes = tuple(classes)
        line = axis_space.lines[0]
        pts = [b for c in self.classes for b in c.grids[0].breaks]
        self.grid = axis_grid(line, make_breaks(line, pts))
        self.atom_class = [-1] * self.grid.n
        for ci, c in enumerate(self.classes):
            m = index_map(self.grid, c.grids[0])
            for i in self.grid.live:
                if (m[i],) in c.atoms:
                    if self.atom_class[i] != -1:
                        raise ValueError("partition classes overlap")
                    self.atom_class[i] = ci
        if any(self.atom_class[i] == -1 for i in self.grid.live):
            raise ValueError("partition classes do not cover the line")

    def label(self, coord) -> int:
        return self.atom_class[self.grid.locate(coord)]

    def __len__(self):
        return len(self.classes)

    def refines(self, other: AxisPartition) -> bool:
        return all(any(a.issubset(b) for b in other.classes) for a in self.classes)

    def __eq__(self, other):
        return isinstance(other, AxisPartition) and set(self.classes) == set(other.classes)

    def __hash__(self):
        return hash(frozenset(self.classes))


class Partition:
    space = None
    level = None

    def classes(self):
        raise NotImplementedError

    def label(self, p):
        raise NotImplementedError

    def class_of_label(self, lab):
        raise NotImplementedError

    def class_of(self, p):
        return self.class_of_label(self.label(p))

    def same_class(self, p, q) -> bool:
        return self.label(p) == self.label(q)

    def refines(self, other: Partition) -> bool:
        self.space.check_same(other.space)
        return all(any(a.issubset(b) for b in other.classes()) for a in self.classes())

    def check(self) -> list[str]:
        """Problems with disjointness, covering, clopenness (empty list if valid)."""
        problems = []
        cls = list(self.classes())
        union = self.space.empty()
        for i, a in enumerate(cls):
            if a.is_empty():
                problems.append(f"class {i} is empty")
            if not a.is_clopen():
                problems.append(f"class {i} is not clopen")
            if not (union & a).is_empty():
                problems.append(f"class {i} overlaps an earlier class")
            union = union | a
        if union != self.space.full():
            problems.append("classes do not cover the space")
        return problems


class ProductPartition(Partition):
    """Product of per-axis partitions of a grid space."""

    def __init__(self, space: GridSpace, axes, level=None):
        self.space = space
        self.axes = tuple(axes)
        self.level = level
        if len(self.axes) != space.dim:
            raise ValueError("one axis partition per coordinate required")

    def __len__(self):
        return math.prod(len(a) for a in self.axes)

    def labels(self):
        return itertools.product(*(range(len(a)) for a in self.axes))

    def classes(self):
        for lab in self.labels():
            yield self.class_of_label(lab)

    def label(self, p):
        coords = self.space.to_coords(p)
        return tuple(a.label(c) for a, c in zip(self.axes, coords))

    def class_of_label(self, lab) -> GridSet:
        sets = [a.classes[i] for a, i in zip(self.axes, lab)]
        if self.space.dim == 1 and not self.space.tuple_points:
            return sets[0]
        return self.space.product(sets)

    def refines(self, other: Partition) -> bool:
        if isinstance(other, ProductPartition):
            self.space.check_same(other.space)
            return all(a.refines(b) for a, b in zip(self.axes, other.axes))
        return super().refines(other)

    def map_axes(self, fn) -> ProductPartition:
        return ProductPartition(self.space, [AxisPartition(a.axis_space, [fn(i, c) for c in a.classes])
                                             for i, a in enumerate(self.axes)])

    def __eq__(self, other):
        return isinstance(other, ProductPartition) and self.space == other.space and self.axes == other.axes

    def __hash__(self):
        return hash(self.axes)

    def __repr__(self):
        return f"ProductPartition({self.space.spec}, {[len(a) for a in self.axes]})"


class ExplicitPartition(Partition):
    def __init__(self, space, classes, level=None):
        self.space = space
        self._classes = tuple(classes)
        self.level = level

    def __len__(self):
        return len(self._classes)

    def classes(self):
        return iter(self._classes)

    def labels(self):
        return iter(range(len(self._classes)))

    def label(self, p):
        for i, c in enumerate(self._classes):
            if c.contains(p):
                return i
        raise ValueError(f"{p!r} lies in no class")

    def class_of_label(self, lab):
        return self._classes[lab]

    def __eq__(self, other):
        return isinstance(other, ExplicitPartition) and set(self._classes) == set(other._classes)

    def __hash__(self):
        return hash(frozenset(self._classes))

    def __repr__(self):
        return f"ExplicitPartition({self.space.spec}, {len(self._classes)} classes)"


def _axis_level(axis_space: GridSpace, level: int) -> AxisPartition:
    line = axis_space.lines[0]
    cuts = line.level_cuts(level)
    boxes = []
    lo = line.min
    if line.name == "cyclic":
        # 0 is always a cut; Rat(0) is the least point
        for i, c in enumerate(cuts):
            boxes.append(((line.make(0, c), True, line.make(0, c), True),))
            hi = line.make(-1, cuts[i + 1]) if i + 1 < len(cuts) else line.max
            boxes.append(((line.make(1, c), True, hi, True),))
    else:
        for c in cuts:
            boxes.append(((lo, True, line.make(-1, c), True),))
            boxes.append(((line.make(0, c), True, line.make(0, c), True),))
            lo = line.make(1, c)
        boxes.append(((lo, True, line.max, True),))
    return AxisPartition(axis_space, [axis_space.boxes([b]) for b in boxes])


def canonical_partition(space, level: int) -> Partition:
    if not isinstance(level, int) or level < 1:
        raise ValueError(f"partition level must be a positive integer, got {level!r}")
    return _canonical(space, level)


@lru_cache(maxsize=256)
def _canonical(space, level: int) -> Partition:
    if isinstance(space, GridSpace):
        axes = [_axis_level(space.axis_space(i), level) for i in range(space.dim)]
        return ProductPartition(space, axes, level)
    if isinstance(space, CompactSpace):
        classes = [space.singleton(Iso(k)) for k in range(level + 1)]
        classes.append(space.tail(level + 1))
        return ExplicitPartition(space, classes, level)
    if isinstance(space, CylinderSpace):
        words = ["".join(b) for b in itertools.product("01", repeat=level)]
        return ExplicitPartition(space, [space.cylinder(w) for w in words], level)
    if isinstance(space, FiniteSpace):
        return ExplicitPartition(space, [space.singleton(p) for p in space.points], level)
    raise ValueError(f"no canonical partitions for {space!r}")


def trivial_partition(space) -> Partition:
    """The one-class partition (entourage X×X)."""
    if isinstance(space, GridSpace):
        axes = [AxisPartition(space.axis_space(i), [space.axis_space(i).full()]) for i in range(space.dim)]
        return ProductPartition(space, axes)
    return ExplicitPartition(space, [space.full()])


def discrete_partition(space) -> Partition:
    if not isinstance(space, FiniteSpace):
        raise ValueError("only finite spaces have a discrete clopen partition")
    return ExplicitPartition(space, [space.singleton(p) for p in space.points])

"""Definition-level brute force for oscillation.

f P-oscillates at x within Y when every neighbourhood of x holds two points of
Y whose images fall in different classes of P. The search below walks the
canonical neighbourhood basis of x and enumerates named points, so it never
touches the symbolic derivative: it certifies oscillation when it finds a
pair and only weakly refutes it otherwise (exactly on finite spaces).
"""

from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from functools import lru_cache

from .engine import derivative
from .rational import rationals_up_to, simplest_between
from .space import (
    CompactSpace, CylinderPoint, CylinderSpace, FiniteSpace, GridSpace, Iso, Limit,
    canonical_partition, point_text,
)

MAX_CANDIDATES = 20000


@dataclass(frozen=True)
class LevelVerdict:
    level: int
    kind: str  # "Witnessed" | "NoWitnessFound" | "Unknown"
    v1: object = None
    v2: object = None
    atom: str | None = None

    def to_json(self):
        out = {"level": self.level, "verdict": self.kind}
        if self.kind == "Witnessed":
            out.update(v1=point_text(self.v1), v2=point_text(self.v2), atom=self.atom)
        return out


@dataclass
class OscillationReport:
    point: object
    height: int
    levels: list = field(default_factory=list)

    @property
    def all_witnessed(self) -> bool:
        return bool(self.levels) and all(v.kind == "Witnessed" for v in self.levels)

    @property
    def refuted(self) -> bool:
        return any(v.kind == "NoWitnessFound" for v in self.levels)

    def to_json(self):
        return {"point": point_text(self.point), "height": self.height,
                "levels": [v.to_json() for v in self.levels]}


# ---------------------------------------------------------------------------
# candidate generation


def _positions(S, axis: int) -> set:
    grids = getattr(S, "grids", None)
    if grids is None:
        return set()
    return {b.q for b in grids[axis].breaks if b.q is not None}


@lru_cache(maxsize=4096)
def _line_candidates(line, values: frozenset) -> tuple:
    """Sorted (keys, points): both one-sided types and the realized point of each value."""
    vals = sorted(values)
    extra = set()
    if vals:
        # one value beyond the sampled range on each open end
        if line.name == "cutline":
            extra.add(simplest_between(None, vals[0]))
            extra.add(simplest_between(vals[-1], None))
        else:
            extra.add(simplest_between(vals[-1], 1))
    pts = {}
    if line.name == "cutline":
        pts[line.min.key] = line.min
        pts[line.max.key] = line.max
    for r in set(vals) | extra:
        if r is None or (line.name == "cyclic" and not 0 <= r < 1):
            continue
        for p in line.triple(r):
            pts[p.key] = p
    keys = sorted(pts)
    return keys, [pts[k] for k in keys]


def _axis_candidates(line, lo, hi, values) -> list:
    keys, pts = _line_candidates(line, frozenset(values))
    inside = pts[bisect_left(keys, lo.key):bisect_right(keys, hi.key)]
    return sorted(inside, key=lambda p: (p.height, p.key))


def candidates(f, Y, atom, x, height: int, level: int):
    """Named points of the basic neighbourhood ``atom`` to try as partners of x."""
    space = f.space
    if isinstance(space, GridSpace):
        box = atom.cells()[0]
        coords = space.to_coords(x)
        per_axis = []
        for i, line in enumerate(space.lines):
            vals = set(rationals_up_to(height)) | set(line.level_cuts(level))
            if coords[i].q is not None:
                vals.add(coords[i].q)
            vals |= _positions(Y, i)
            for region, _ in f.pieces:
                vals |= _positions(region, i)
            lo, _, hi, _ = box[i]
            per_axis.append(_axis_candidates(line, lo, hi, vals))
        for combo in itertools.product(*per_axis):
            yield space.from_coords(combo)
        return
    if isinstance(space, CompactSpace):
        for k in range(height + level + 2):
            if atom.contains(Iso(k)):
                yield Iso(k)
        if atom.contains(Limit):
            yield Limit
        return
    if isinstance(space, CylinderSpace):
        n = max(height - 1, level + 2)
        seen = set()
        for m in range(n + 1):
            for bits in itertools.product("01", repeat=m):
                for tail in (0, 1):
                    p = CylinderPoint("".join(bits), tail)
                    if p not in seen and atom.contains(p):
                        seen.add(p)
                        yield p
        return
    if isinstance(space, FiniteSpace):
        yield from atom.points()
        return
    raise ValueError(f"no candidate generator for {space!r}")


# ---------------------------------------------------------------------------
# search


def search_level(f, P, x, Y, height: int, level: int, max_candidates: int = MAX_CANDIDATES) -> LevelVerdict:
    atom = canonical_partition(f.space, level).class_of(x)
    target = P.label(f.apply(x))
    count = 0
    for v in candidates(f, Y, atom, x, height, level):
        count += 1
        if count > max_candidates:
            return LevelVerdict(level, "Unknown", atom=atom.literal())
        if v == x or not Y.contains(v):
            continue
        if P.label(f.apply(v)) != target:
            return LevelVerdict(level, "Witnessed", x, v, atom.literal())
    return LevelVerdict(level, "NoWitnessFound", atom=atom.literal())


class _AtomSearch:
    """search_level for many points at once: points sharing an atom share its candidates.

    Per atom we keep, for each image label, the first candidate carrying it.
    The witness for x is then the earliest candidate whose label differs from
    that of f(x), which is what the pointwise search returns as well.
    """

    def __init__(self, f, P, Y, height: int, max_candidates: int = MAX_CANDIDATES):
        self.f, self.P, self.Y, self.height = f, P, Y, height
        self.max_candidates = max_candidates
        self._atoms = {}
        self._grid = isinstance(f.space, GridSpace)

    def _summary(self, atom, x, level):
        key = (level, atom)
        if key not in self._atoms:
            first = {}
            count = 0
            capped = False
            for v in candidates(self.f, self.Y, atom, x, self.height, level):
                count += 1
                if count > self.max_candidates:
                    capped = True
                    break
                if not self.Y.contains(v):
                    continue
                first.setdefault(self.P.label(self.f.apply(v)), (count, v))
            self._atoms[key] = (capped, sorted(first.items(), key=lambda kv: kv[1][0]))
        return self._atoms[key]

    def _shared(self, x) -> bool:
        # the candidate list only depends on x through its own coordinates
        if not self._grid:
            return True
        base = set(rationals_up_to(self.height))
        return all(c.q is None or c.q in base for c in self.f.space.to_coords(x))

    def __call__(self, x, level: int) -> LevelVerdict:
        if not self._shared(x):
            return search_level(self.f, self.P, x, self.Y, self.height, level, self.max_candidates)
        atom = canonical_partition(self.f.space, level).class_of(x)
        capped, firsts = self._summary(atom, x, level)
        target = self.P.label(self.f.apply(x))
        for label, (_, v) in firsts:
            if label != target:
                return LevelVerdict(level, "Witnessed", x, v, atom.literal())
        if capped:
            return LevelVerdict(level, "Unknown", atom=atom.literal())
        return LevelVerdict(level, "NoWitnessFound", atom=atom.literal())


def witness_search(f, P, x, Y=None, height: int = 4, depth: int = 3) -> OscillationReport:
    Y = f.space.full() if Y is None else Y
    if not Y.contains(x):
        raise ValueError(f"{x!r} is not in Y")
    rep = OscillationReport(x, height)
    for level in range(1, depth + 1):
        rep.levels.append(search_level(f, P, x, Y, height, level))
    return rep


def recheck(f, P, Y, verdict: LevelVerdict) -> bool:
    """Re-verify a Witnessed verdict from scratch."""
    if verdict.kind != "Witnessed":
        return True
    atom = canonical_partition(f.space, verdict.level).class_of(verdict.v1)
    return (atom.contains(verdict.v2) and Y.contains(verdict.v1) and Y.contains(verdict.v2)
            and P.label(f.apply(verdict.v1)) != P.label(f.apply(verdict.v2)))


@dataclass
class ConsistencyReport:
    total: int = 0
    in_derivative: int = 0
    agreed: int = 0
    unknown: list = field(default_factory=list)
    hard_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.hard_failures

    def to_json(self):
        return {"total": self.total, "in_derivative": self.in_derivative, "agreed": self.agreed,
                "unknown": len(self.unknown),
                "hard_failures": [point_text(p) for p in self.hard_failures]}


def consistency_check(f, P, Y=None, height: int = 4, depth: int = 3, D=None) -> ConsistencyReport:
    """Compare the symbolic derivative with the witness search on every named sample of Y.

    Points of the derivative must be witnessed at every level up to ``depth``;
    a miss there is a hard failure. Points outside it must fail to be
    witnessed at the deepest level, otherwise they are recorded as unknown.
    """
    Y = f.space.full() if Y is None else Y
    D = derivative(Y, f, P) if D is None else D
    rep = ConsistencyReport()
    search = _AtomSearch(f, P, Y, height)
    exact = isinstance(f.space, FiniteSpace)
    for x in f.space.named_points(height):
        if not Y.contains(x):
            continue
        rep.total += 1
        if D.contains(x):
            rep.in_derivative += 1
            ok = True
            for level in range(1, depth + 1):
                v = search(x, level)
                if v.kind != "Witnessed" or not recheck(f, P, Y, v):
                    ok = False
                    break
            if ok:
                rep.agreed += 1
            else:
                rep.hard_failures.append(x)
        else:
            v = search(x, depth)
            if v.kind == "NoWitnessFound":
                rep.agreed += 1
            elif exact:
                rep.hard_failures.append(x)
            else:
                rep.unknown.append(x)
    return rep


def brute_force_derivative(Y, f, P):
    """Oscillation set by the definition, quantifying over every open set (finite spaces)."""
    space = f.space
    if not isinstance(space, FiniteSpace):
        raise ValueError("exhaustive neighbourhood search needs a finite space")
    if len(space.points) > 12:
        raise ValueError("finite space too large for exhaustive neighbourhood search")
    ys = Y.points()
    out = []
    for y in ys:
        others = [p for p in space.points if p != y]
        oscillates = True
        for r in range(len(others) + 1):
            for extra in itertools.combinations(others, r):
                V = [y, *extra]  # discrete topology: every set is open
                inside = [v for v in V if Y.contains(v)]
                labels = {P.label(f.apply(v)) for v in inside}
                if len(labels) < 2:
                    oscillates = False
                    break
            if not oscillates:
                break
        if oscillates:
            out.append(y)
    return space.finite_set(out)

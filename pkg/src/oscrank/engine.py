"""Oscillation derivative, its iteration, and the ranks built on it.

For a closed Y, a map f and a finite clopen partition P the derivative is

    Y' = ⋃_{A≠B ∈ P} cl(Y ∩ f⁻¹[A]) ∩ cl(Y ∩ f⁻¹[B]).

On grid spaces it is evaluated piece by piece instead: every action extends
continuously to the whole space, so y ∈ Y oscillates iff it lies in
cl(Y∩R_k) ∩ cl(Y∩R_j) for two pieces whose actions send y to different
classes. Both routes are kept; tests compare them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .maps import (
    Constant, CyclicPLAuto, DenseCodense, FinitePerm, FinSuppPerm, Flip, MapError,
    PiecewiseMap, PLAuto, ProductAuto,
)
from .rational import simplest_between
from .space import (
    CompactPoint, CompactSpace, CylinderPoint, CylinderSpace, FiniteSpace, GridSpace,
    ProductPartition, canonical_partition, point_text,
)
from .space.grid import GridSet, axis_grid, make_breaks

DEFAULT_CAP = 64


class EngineError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rank values


@dataclass(frozen=True, order=False)
class RankValue:
    kind: str  # "finite" | "infinite" | "capped"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("finite", "infinite", "capped"):
            raise ValueError(f"bad rank kind {self.kind!r}")

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def is_capped(self):
        return self.kind == "capped"

    def to_json(self):
        if self.kind == "infinite":
            return "infinite"
        return {self.kind: self.n}

    def text(self) -> str:
        if self.kind == "infinite":
            return "Infinite"
        return f"{'Finite' if self.kind == 'finite' else 'Capped'}({self.n})"

    def __repr__(self):
        return self.text()

    def le(self, other: RankValue) -> bool | None:
        """self ⩽ other; None when a Capped value makes it undecidable."""
        if self.is_capped or other.is_capped:
            return None
        if other.kind == "infinite":
            return True
        if self.kind == "infinite":
            return False
        return self.n <= other.n


def Finite(n: int) -> RankValue:
    return RankValue("finite", n)


INFINITE = RankValue("infinite")


def Capped(n: int) -> RankValue:
    return RankValue("capped", n)


def rank_sup(values) -> RankValue:
    values = list(values)
    capped = [v for v in values if v.is_capped]
    if capped:
        return Capped(max(v.n for v in capped))
    if any(v.kind == "infinite" for v in values):
        return INFINITE
    return Finite(max([v.n for v in values] + [0]))


# ---------------------------------------------------------------------------
# per-axis label functions (grid spaces)


def _axis_parts(action, space: GridSpace, i: int):
    """(forward, inverse) on axis i, or ('const', coordinate)."""
    if isinstance(action, Constant):
        coords = space.to_coords(action.point)
        return ("const", coords[i])
    g = action.g
    if isinstance(g, ProductAuto):
        return g.comps[i].axis_fns()[0]
    return g.axis_fns()[0]


def _label_breaks(parts, axis_part):
    """Breakpoints on which the axis label of an action can change."""
    if parts[0] == "const":
        return []
    _, inv = parts
    return [inv(b) for b in axis_part.grid.breaks]


def _axis_label(parts, axis_part, t):
    if parts[0] == "const":
        return axis_part.label(parts[1])
    return axis_part.label(parts[0](t))


def _differ_axis(space: GridSpace, P: ProductPartition, i: int, a, b) -> GridSet:
    """1-dimensional set of coordinates where a and b land in different axis classes."""
    axis_space = space.axis_space(i)
    line = axis_space.lines[0]
    ap = P.axes[i]
    pa, pb = _axis_parts(a, space, i), _axis_parts(b, space, i)
    grid = axis_grid(line, make_breaks(line, _label_breaks(pa, ap) + _label_breaks(pb, ap)))
    atoms = []
    for j in grid.live:
        w = grid.witness(j)
        if _axis_label(pa, ap, w) != _axis_label(pb, ap, w):
            atoms.append((j,))
    return GridSet(axis_space, (grid,), atoms)


def differ_set(space: GridSpace, P: ProductPartition, a, b) -> GridSet:
    """Points y with P-label(a(y)) ≠ P-label(b(y)), for Constant/Apply actions."""
    out = space.empty()
    for i in range(space.dim):
        E = _differ_axis(space, P, i, a, b)
        if E.is_empty():
            continue
        if space.dim == 1 and not space.tuple_points:
            out = out | E
        else:
            sets = [space.axis_space(k).full() for k in range(space.dim)]
            sets[i] = E
            out = out | space.product(sets)
    return out


# ---------------------------------------------------------------------------
# derivative


def _check_inputs(Y, f: PiecewiseMap, P):
    f.space.check_same(Y.space)
    f.space.check_same(P.space)
    if Y.closure() != Y:
        raise EngineError(f"derivative needs a closed set, got {Y.literal()}")


def _dense_codense_derivative(Y, f, P):
    act = f.pieces[0][1]
    if P.label(act.c0) == P.label(act.c1):
        return Y.space.empty()
    return Y - Y.space.finite_set(Y.isolated_points())


def derivative_literal(Y, f: PiecewiseMap, P):
    """The pairwise-closure formula over all partition classes."""
    _check_inputs(Y, f, P)
    if f.is_dense_codense:
        return _dense_codense_derivative(Y, f, P)
    parts = []
    for A in P.classes():
        S = (Y & f.preimage(A)).closure()
        if not S.is_empty():
            parts.append(S)
    out = Y.space.empty()
    for S, T in itertools.combinations(parts, 2):
        out = out | (S & T)
    return _tidy(out)


def _tidy(S):
    return S.compact() if isinstance(S, GridSet) else S


def derivative(Y, f: PiecewiseMap, P):
    """(Y)'_{f,P}: points of the closed set Y at which f P-oscillates within Y."""
    _check_inputs(Y, f, P)
    if Y.is_empty():
        return Y
    if f.is_dense_codense:
        return _dense_codense_derivative(Y, f, P)
    if not (isinstance(Y.space, GridSpace) and isinstance(P, ProductPartition)):
        return derivative_literal(Y, f, P)
    space = Y.space
    closed = [((Y & r).closure(), a) for r, a in f.pieces]
    closed = [(K, a) for K, a in closed if not K.is_empty()]
    out = space.empty()
    for (K1, a1), (K2, a2) in itertools.combinations(closed, 2):
        D = K1 & K2
        if D.is_empty():
            continue
        out = out | (D & differ_set(space, P, a1, a2))
    return _tidy(out)


# ---------------------------------------------------------------------------
# chains and ranks


@dataclass
class DerivativeChain:
    stages: list
    termination: str  # "Empty" | "FixedPoint" | "CapReached"
    witnesses: list = field(default_factory=list)

    @property
    def proper_stages(self) -> int:
        return len(self.stages) - 1

    def rank(self, cap: int) -> RankValue:
        if self.termination == "FixedPoint":
            return INFINITE
        if self.termination == "CapReached":
            return Capped(cap)
        return Finite(max(len(self.stages) - 2, 0))


@dataclass(frozen=True)
class Certificate:
    """x oscillates within S: v1, v2 ∈ S ∩ V have images in different classes."""

    point: object
    neighbourhood: object
    v1: object
    v2: object

    def to_json(self):
        return {"point": point_text(self.point), "neighbourhood": self.neighbourhood.literal(),
                "v1": point_text(self.v1), "v2": point_text(self.v2)}


def certificate(S, f: PiecewiseMap, P, x, level: int = 1) -> Certificate:
    """Witness pair for x ∈ (S)'_{f,P} inside the level-``level`` basic neighbourhood of x."""
    V = canonical_partition(f.space, level).class_of(x)
    if f.is_dense_codense:
        word = x.prefix(level)
        return Certificate(x, V, CylinderPoint(word, 0), CylinderPoint(word, 1))
    near = [(r, a) for r, a in f.pieces if (S & r).closure().contains(x)]
    for (r1, a1), (r2, a2) in itertools.combinations(near, 2):
        c1, c2 = P.class_of(a1.apply(x)), P.class_of(a2.apply(x))
        if c1 == c2:
            continue
        # each action is continuous on the whole space, so these are neighbourhoods of x
        u1 = S & r1 & V & a1.pullback(c1, f.space)
        u2 = S & r2 & V & a2.pullback(c2, f.space)
        return Certificate(x, V, u1.witness(), u2.witness())
    raise EngineError(f"{point_text(x)} does not oscillate")


def iterate_derivative(Y, f: PiecewiseMap, P, cap: int = DEFAULT_CAP) -> DerivativeChain:
    if cap < 1:
        raise EngineError("cap must be at least 1")
    stages = [Y]
    witnesses = []
    while True:
        cur = stages[-1]
        if cur.is_empty():
            return DerivativeChain(stages, "Empty", witnesses)
        if len(stages) - 1 >= cap:
            return DerivativeChain(stages, "CapReached", witnesses)
        nxt = derivative(cur, f, P)
        if not nxt.is_empty():
            witnesses.append(certificate(cur, f, P, nxt.witness()))
        if nxt == cur:
            return DerivativeChain(stages, "FixedPoint", witnesses)
        if not nxt.issubset(cur):
            raise EngineError("derivative is not contained in its argument")
        stages.append(nxt)


def beta_of_pair(f: PiecewiseMap, P, cap: int = DEFAULT_CAP, Y=None) -> RankValue:
    """β(f,P): largest α with a nonempty α-th derivative of Y (default: whole space)."""
    Y = f.space.full() if Y is None else Y
    return iterate_derivative(Y, f, P, cap).rank(cap)


@dataclass
class MapRank:
    value: RankValue
    stabilized: bool
    per_level: list

    def __iter__(self):
        return iter((self.value, self.stabilized))


def beta_of_map(f: PiecewiseMap, max_level: int, cap: int = DEFAULT_CAP) -> MapRank:
    """Sup of β(f, P_ℓ) over canonical levels 1..max_level (a lower bound for β(f))."""
    if max_level < 1:
        raise EngineError("max_level must be at least 1")
    vals = [beta_of_pair(f, canonical_partition(f.space, l), cap) for l in range(1, max_level + 1)]
    for a, b in zip(vals, vals[1:]):
        if a.le(b) is False:
            raise EngineError(f"refinement monotonicity violated for {f.name}: {vals}")
    tail = vals[-3:]
    return MapRank(rank_sup(vals), all(v == tail[0] for v in tail), vals)


def beta_of_system(maps, max_level: int, cap: int = DEFAULT_CAP) -> RankValue:
    maps = list(maps)
    if not maps:
        raise EngineError("beta_of_system needs at least one map")
    return rank_sup(beta_of_map(f, max_level, cap).value for f in maps)


def point_rank(f: PiecewiseMap, P, x, cap: int = DEFAULT_CAP, Y=None, chain=None) -> RankValue:
    Y = f.space.full() if Y is None else Y
    if not Y.contains(x):
        raise EngineError(f"{x!r} is not in the starting set")
    chain = chain or iterate_derivative(Y, f, P, cap)
    for alpha, S in enumerate(chain.stages):
        if not S.contains(x):
            return Finite(alpha - 1)
    if chain.termination == "FixedPoint":
        return INFINITE
    if chain.termination == "CapReached":
        return Capped(cap)
    raise AssertionError("empty final stage cannot contain a point")


def cb_point_rank(space, x) -> RankValue:
    if isinstance(space, GridSpace):
        coords = space.to_coords(x)
        return Finite(0) if all(c.is_rational for c in coords) else INFINITE
    if isinstance(space, CompactSpace):
        if not isinstance(x, CompactPoint):
            raise EngineError(f"{x!r} is not a compactification point")
        return Finite(1) if x.is_limit else Finite(0)
    if isinstance(space, CylinderSpace):
        return INFINITE
    if isinstance(space, FiniteSpace):
        if not space.contains_point(x):
            raise EngineError(f"{x!r} is not a point of {space.spec}")
        return Finite(0)
    raise EngineError(f"unsupported: no Cantor-Bendixson oracle for {space!r}")


# ---------------------------------------------------------------------------
# continuity


def _rat_points(g):
    if isinstance(g, PLAuto):
        return [x for x, _ in g.points]
    if isinstance(g, CyclicPLAuto):
        return [x for x, _ in g.points]
    raise MapError("not a line map")


def _rational_eval(g, q):
    return g.eval(q) if isinstance(g, PLAuto) else g.lift(q)


def _line_maps_agree_on_gap(g, h, line, lo, hi) -> bool:
    """g = h on every rational strictly between the cut points lo < hi."""
    l0, lc = line._lower_bound(lo)
    h0, hc = line._upper_bound(hi)
    inner = sorted({x for x in _rat_points(g) + _rat_points(h)
                    if (l0 is None or x > l0 or (x == l0 and lc)) and (h0 is None or x < h0 or (x == h0 and hc))})
    # both maps are affine between consecutive knots: two agreeing points per piece suffice
    bounds = [(l0, lc)] + [(x, False) for x in inner] + [(h0, hc)]
    tests = list(inner)
    for (a, ac), (b, bc) in zip(bounds, bounds[1:]):
        r1 = simplest_between(a, b, ac, bc)
        if r1 is None:
            continue
        tests.append(r1)
        r2 = simplest_between(r1, b, False, bc)
        if r2 is not None:
            tests.append(r2)
    for q in tests:
        gq, hq = _rational_eval(g, q), _rational_eval(h, q)
        if isinstance(g, CyclicPLAuto):
            gq, hq = gq % 1, hq % 1
        if gq != hq:
            return False
    return True


def _axis_components(action, space, i):
    if isinstance(action, Constant):
        return ("const", space.to_coords(action.point)[i])
    g = action.g
    return ("map", g.comps[i] if isinstance(g, ProductAuto) else g)


def _grid_agree(a, b, D: GridSet) -> bool:
    space = D.space
    for t in D.atoms:
        for i, (g, j) in enumerate(zip(D.grids, t)):
            ca, cb = _axis_components(a, space, i), _axis_components(b, space, i)
            if j % 2 == 0:
                p = g.breaks[j // 2]
                va = ca[1] if ca[0] == "const" else ca[1].apply(p)
                vb = cb[1] if cb[0] == "const" else cb[1].apply(p)
                if va != vb:
                    return False
                continue
            lo, hi = g.breaks[j // 2], g.breaks[j // 2 + 1]
            if ca[0] == "const" and cb[0] == "const":
                if ca[1] != cb[1]:
                    return False
            elif ca[0] == "const" or cb[0] == "const":
                return False  # a homeomorphism is not constant on a nonempty gap
            elif not _line_maps_agree_on_gap(ca[1], cb[1], g.line, lo, hi):
                return False
    return True


def _agree(a, b, D) -> bool:
    """Do the two actions coincide on every point of D?"""
    if D.is_empty():
        return True
    if isinstance(a, DenseCodense) or isinstance(b, DenseCodense):
        return False
    if isinstance(D, GridSet):
        return _grid_agree(a, b, D)
    if D.is_finite():
        return all(a.apply(p) == b.apply(p) for p in D.points())
    if isinstance(a, Constant) and isinstance(b, Constant):
        return a.point == b.point
    if isinstance(a, Constant) or isinstance(b, Constant):
        return False  # injective action on an infinite set
    g, h = a.g, b.g
    if isinstance(g, FinSuppPerm):
        keys = {k for k, _ in g.mapping} | {k for k, _ in h.mapping}
        return all(g._map(k) == h._map(k) for k in keys if D.contains(CompactPoint(k)))
    if isinstance(g, Flip):
        if g == h:
            return True
        return all(g.apply(p) == h.apply(p) for p in D.isolated_points()) and not D.words
    if isinstance(g, FinitePerm):
        return all(g.apply(p) == h.apply(p) for p in D.points())
    raise MapError(f"cannot compare actions {a!r} and {b!r}")


def continuity_violation(f: PiecewiseMap):
    """A pair of pieces whose actions disagree on the overlap of their closures, or None."""
    if f.is_dense_codense:
        act = f.pieces[0][1]
        return None if act.c0 == act.c1 else (0, 0)
    cl = [r.closure() for r, _ in f.pieces]
    for k, j in itertools.combinations(range(len(f.pieces)), 2):
        if not _agree(f.pieces[k][1], f.pieces[j][1], cl[k] & cl[j]):
            return (k, j)
    return None


def is_continuous(f: PiecewiseMap, level_bound: int = 3) -> bool:
    structural = continuity_violation(f) is None
    X = f.space.full()
    empty = all(derivative(X, f, canonical_partition(f.space, l)).is_empty()
                for l in range(1, level_bound + 1))
    if structural and not empty:
        raise EngineError(f"{f.name}: continuous by structure but oscillates at a finite level")
    return structural and empty


# ---------------------------------------------------------------------------
# fragmentedness


@dataclass
class FragmentationReport:
    verdict: str  # "Fragmented" | "NotFragmented" | "Indeterminate"
    beta: RankValue | None = None
    fixed: object = None
    partition: object = None
    level: int | None = None
    iterations: int = 0


def is_fragmented_report(f: PiecewiseMap, max_level: int = 3, cap: int = DEFAULT_CAP) -> FragmentationReport:
    X = f.space.full()
    vals = []
    for level in range(1, max_level + 1):
        P = canonical_partition(f.space, level)
        chain = iterate_derivative(X, f, P, cap)
        if chain.termination == "FixedPoint":
            return FragmentationReport("NotFragmented", INFINITE, chain.stages[-1], P, level,
                                       iterations=len(chain.stages))
        if chain.termination == "CapReached":
            return FragmentationReport("Indeterminate", Capped(cap), level=level)
        vals.append(chain.rank(cap))
    return FragmentationReport("Fragmented", rank_sup(vals))


# ---------------------------------------------------------------------------
# oscillation directions


def oscillation_directions(f: PiecewiseMap, P, x, Y=None) -> frozenset:
    """Subset of {"Left", "Right"}: sides (in the image order) of the class of f(x)
    from which f-images of points arbitrarily close to x arrive."""
    space = f.space
    if not isinstance(space, GridSpace) or space.dim != 1 or space.tuple_points:
        raise EngineError("oscillation directions need an ordered one-dimensional space")
    Y = space.full() if Y is None else Y
    I = P.class_of(f.apply(x))
    cells = I.cells()
    if len(cells) != 1:
        raise EngineError("partition class is not an interval")
    lo, _, hi, _ = cells[0][0]
    line = space.lines[0]
    out = set()
    if hi != line.max:
        above = space.interval(hi, line.max, lo_inc=False)
        if (Y & f.preimage(above)).closure().contains(x):
            out.add("Right")
    if lo != line.min:
        below = space.interval(line.min, lo, hi_inc=False)
        if (Y & f.preimage(below)).closure().contains(x):
            out.add("Left")
    return frozenset(out)

"""Homeomorphisms of the shipped spaces and piecewise (possibly discontinuous) self-maps."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .rational import Q, fmt, parse_rational
from .space import (
    CompactSet, CompactSpace, CompactPoint, CutPoint, CyclicPoint, CylinderPoint, CylinderSet,
    CylinderSpace, FiniteSet, FiniteSpace, GridSet, GridSpace, ProductPoint, point_text,
)
from .space.cylinder import canonical_words
from .space.points import MINF, PINF


class MapError(ValueError):
    pass


# ---------------------------------------------------------------------------
# group elements


def _segment_eval(knots, x):
    """Linear interpolation through sorted knots; x must lie within their span."""
    for (x0, y0), (x1, y1) in zip(knots, knots[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise AssertionError("point outside knot span")


def _drop_collinear(knots, left, right):
    pts = list(knots)
    changed = True
    while changed and len(pts) > 1:
        changed = False
        for i in range(len(pts)):
            sin = left if i == 0 else (pts[i][1] - pts[i - 1][1]) / (pts[i][0] - pts[i - 1][0])
            sout = right if i == len(pts) - 1 else (pts[i + 1][1] - pts[i][1]) / (pts[i + 1][0] - pts[i][0])
            if sin == sout:
                del pts[i]
                changed = True
                break
    return pts


class GroupElement:
    """Base class; subclasses implement apply/inverse/compose and set pullback."""

    def __call__(self, p):
        return self.apply(p)

    def push(self, S):
        """Image g[S]."""
        return self.inverse().pullback(S)

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash((type(self).__name__, self.key()))

    def __repr__(self):
        return self.text()


@dataclass(frozen=True, eq=False, repr=False)
class PLAuto(GroupElement):
    """Order-preserving PL bijection of Q, affine beyond the outer breakpoints."""

    points: tuple
    left: Fraction = Fraction(1)
    right: Fraction = Fraction(1)

    def __post_init__(self):
        pts = tuple((Q(x), Q(y)) for x, y in self.points) or ((Fraction(0), Fraction(0)),)
        left, right = Q(self.left), Q(self.right)
        if left <= 0 or right <= 0:
            raise MapError("PL slopes must be positive")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x0 < x1 and y0 < y1):
                raise MapError("PL breakpoints must be strictly increasing in both coordinates")
        pts = _drop_collinear(pts, left, right)
        if len(pts) == 1 and left == right:
            x0, y0 = pts[0]
            pts = [(Fraction(0), y0 - left * x0)]
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def key(self):
        return (self.points, self.left, self.right)

    def eval(self, q: Fraction) -> Fraction:
        pts = self.points
        if q <= pts[0][0]:
            return pts[0][1] + self.left * (q - pts[0][0])
        if q >= pts[-1][0]:
            return pts[-1][1] + self.right * (q - pts[-1][0])
        return _segment_eval(pts, q)

    def apply(self, p):
        if not isinstance(p, CutPoint):
            raise MapError(f"{p!r} is not a cut-line point")
        if p.tag in (MINF, PINF):
            return p
        return CutPoint(p.tag, self.eval(p.q))

    def inverse(self) -> PLAuto:
        return PLAuto(tuple((y, x) for x, y in self.points), 1 / self.left, 1 / self.right)

    def compose(self, other: PLAuto) -> PLAuto:
        """self ∘ other."""
        inv = other.inverse()
        xs = sorted({x for x, _ in other.points} | {inv.eval(x) for x, _ in self.points})
        return PLAuto(tuple((x, self.eval(other.eval(x))) for x in xs),
                      self.left * other.left, self.right * other.right)

    def is_identity(self) -> bool:
        return self.points == ((0, 0),) and self.left == 1 and self.right == 1

    def axis_fns(self):
        inv = self.inverse()
        return [(self.apply, inv.apply)]

    def pullback(self, S: GridSet) -> GridSet:
        if S.space.dim != 1 or S.space.tuple_points:
            raise MapError("PLAuto acts on the bare cut line")
        fw, bw = zip(*self.axis_fns())
        return S.pullback(fw, bw)

    def text(self) -> str:
        body = ";".join(f"{fmt(x)}:{fmt(y)}" for x, y in self.points)
        extra = "" if self.left == 1 and self.right == 1 else f"|{fmt(self.left)}|{fmt(self.right)}"
        return f"plauto:{body}{extra}"


def shift(c) -> PLAuto:
    return PLAuto(((Fraction(0), Q(c)),))


@dataclass(frozen=True, eq=False, repr=False)
class ProductAuto(GroupElement):
    comps: tuple

    def key(self):
        return tuple(c.key() for c in self.comps)

    def apply(self, p):
        if not isinstance(p, ProductPoint) or len(p.coords) != len(self.comps):
            raise MapError(f"{p!r} has the wrong arity for {self.text()}")
        return ProductPoint(tuple(g.apply(c) for g, c in zip(self.comps, p.coords)))

    def inverse(self):
        return ProductAuto(tuple(g.inverse() for g in self.comps))

    def compose(self, other):
        return ProductAuto(tuple(a.compose(b) for a, b in zip(self.comps, other.comps)))

    def is_identity(self):
        return all(g.is_identity() for g in self.comps)

    def axis_fns(self):
        return [g.axis_fns()[0] for g in self.comps]

    def pullback(self, S: GridSet) -> GridSet:
        fw, bw = zip(*self.axis_fns())
        return S.pullback(fw, bw)

    def text(self) -> str:
        return "prod(" + ",".join(g.text() for g in self.comps) + ")"


@dataclass(frozen=True, eq=False, repr=False)
class CyclicPLAuto(GroupElement):
    """Orientation-preserving PL circle map given by a periodic lift F(x+1) = F(x)+1.

    ``points`` are knots (x, F(x)) with 0 <= x < 1.
    """

    points: tuple

    def __post_init__(self):
        pts = sorted((Q(x), Q(y)) for x, y in self.points)
        if not pts:
            pts = [(Fraction(0), Fraction(0))]
        for x, _ in pts:
            if not 0 <= x < 1:
                raise MapError("cyclic knots need 0 <= x < 1")
        ys = [y for _, y in pts]
        if any(a >= b for a, b in zip(ys, ys[1:])) or ys[-1] >= ys[0] + 1:
            raise MapError("cyclic knots must be strictly increasing within one turn")
        # drop knots where the slope does not change (cyclically)
        changed = True
        while changed and len(pts) > 1:
            changed = False
            ext = [(pts[-1][0] - 1, pts[-1][1] - 1)] + pts + [(pts[0][0] + 1, pts[0][1] + 1)]
            for i in range(1, len(ext) - 1):
                (x0, y0), (x1, y1), (x2, y2) = ext[i - 1], ext[i], ext[i + 1]
                if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
                    del pts[i - 1]
                    changed = True
                    break
        if len(pts) == 1:
            x0, y0 = pts[0]
            pts = [(Fraction(0), y0 - x0)]
        # normalize the lift so that F(0) lies in [0, 1)
        f0 = self._lift(pts, Fraction(0))
        k = math.floor(f0)
        object.__setattr__(self, "points", tuple((x, y - k) for x, y in pts))

    @staticmethod
    def _lift(pts, x: Fraction) -> Fraction:
        n = math.floor(x)
        r = x - n
        ext = [(pts[-1][0] - 1, pts[-1][1] - 1)] + list(pts) + [(pts[0][0] + 1, pts[0][1] + 1)]
        return n + _segment_eval(ext, r)

    def lift(self, x: Fraction) -> Fraction:
        return self._lift(self.points, x)

    def key(self):
        return self.points

    def apply(self, p):
        if not isinstance(p, CyclicPoint):
            raise MapError(f"{p!r} is not a cyclic point")
        return CyclicPoint(p.tag, self.lift(p.q))

    def inverse(self):
        pts = []
        for x, y in self.points:
            k = math.floor(y)
            pts.append((y - k, x - k))
        return CyclicPLAuto(tuple(pts))

    def compose(self, other):
        inv = other.inverse()
        xs = {x for x, _ in other.points}
        for x, _ in self.points:
            t = inv.lift(x)
            xs.add(t - math.floor(t))
        return CyclicPLAuto(tuple((x, self.lift(other.lift(x))) for x in sorted(xs)))

    def is_identity(self):
        return self.points == ((0, 0),)

    def axis_fns(self):
        inv = self.inverse()
        return [(self.apply, inv.apply)]

    def pullback(self, S: GridSet) -> GridSet:
        fw, bw = zip(*self.axis_fns())
        return S.pullback(fw, bw)

    def text(self) -> str:
        return "circle:" + ";".join(f"{fmt(x)}:{fmt(y)}" for x, y in self.points)


def rotation(c) -> CyclicPLAuto:
    return CyclicPLAuto(((Fraction(0), Q(c)),))


@dataclass(frozen=True, eq=False, repr=False)
class FinSuppPerm(GroupElement):
    """Finite-support permutation of the isolated points of the compactification."""

    mapping: tuple  # sorted (k, image) pairs, non-fixed only

    def __post_init__(self):
        m = {int(a): int(b) for a, b in self.mapping if a != b}
        if sorted(m) != sorted(m.values()):
            raise MapError("not a permutation")
        object.__setattr__(self, "mapping", tuple(sorted(m.items())))

    @classmethod
    def from_cycles(cls, cycles) -> FinSuppPerm:
        m = {}
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in m:
                    raise MapError("cycles must be disjoint")
                m[a] = b
        return cls(tuple(m.items()))

    def key(self):
        return self.mapping

    def _map(self, k):
        return dict(self.mapping).get(k, k)

    def apply(self, p):
        if not isinstance(p, CompactPoint):
            raise MapError(f"{p!r} is not a compactification point")
        return p if p.k is None else CompactPoint(self._map(p.k))

    def inverse(self):
        return FinSuppPerm(tuple((b, a) for a, b in self.mapping))

    def compose(self, other):
        keys = {a for a, _ in self.mapping} | {a for a, _ in other.mapping}
        return FinSuppPerm(tuple((k, self._map(other._map(k))) for k in keys))

    def is_identity(self):
        return not self.mapping

    def pullback(self, S: CompactSet) -> CompactSet:
        inv = self.inverse()
        return CompactSet(S.space, S.cofinite, frozenset(inv._map(k) for k in S.isos), S.limit)

    def cycles(self) -> list[list[int]]:
        m = dict(self.mapping)
        seen, out = set(), []
        for a in sorted(m):
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = m[a]
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = m[b]
            out.append(cyc)
        return out

    def text(self) -> str:
        return "perm:" + "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


@dataclass(frozen=True, eq=False, repr=False)
class Flip(GroupElement):
    """Flip the bits at finitely many positions of a binary sequence."""

    positions: frozenset

    def __post_init__(self):
        object.__setattr__(self, "positions", frozenset(int(i) for i in self.positions))

    def key(self):
        return tuple(sorted(self.positions))

    def _word(self, w: str) -> str:
        return "".join(("1" if c == "0" else "0") if i in self.positions else c for i, c in enumerate(w))

    def apply(self, p):
        if not isinstance(p, CylinderPoint):
            raise MapError(f"{p!r} is not a cylinder point")
        n = max([len(p.word)] + [i + 1 for i in self.positions])
        return CylinderPoint(self._word(p.prefix(n)), p.tail)

    def inverse(self):
        return self

    def compose(self, other):
        return Flip(self.positions ^ other.positions)

    def is_identity(self):
        return not self.positions

    def pullback(self, S: CylinderSet) -> CylinderSet:
        return CylinderSet(S.space, canonical_words(self._word(w) for w in S.words),
                           frozenset(self.apply(p) for p in S.removed),
                           frozenset(self.apply(p) for p in S.added))

    def text(self) -> str:
        return "flip:" + ",".join(map(str, sorted(self.positions)))


@dataclass(frozen=True, eq=False, repr=False)
class FinitePerm(GroupElement):
    """Permutation of a finite point set given as sorted (point, image) pairs."""

    mapping: tuple

    def __post_init__(self):
        m = dict(self.mapping)
        if sorted(m) != sorted(m.values()):
            raise MapError("not a bijection")
        object.__setattr__(self, "mapping", tuple(sorted(m.items())))

    @classmethod
    def from_cycles(cls, points, cycles) -> FinitePerm:
        m = {p: p for p in points}
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a not in m:
                    raise MapError(f"unknown point {a!r} in generator")
                if a in seen:
                    raise MapError("generator cycles must be disjoint")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                m[a] = b
        return cls(tuple(m.items()))

    def key(self):
        return self.mapping

    def apply(self, p):
        return dict(self.mapping)[p]

    def inverse(self):
        return FinitePerm(tuple((b, a) for a, b in self.mapping))

    def compose(self, other):
        m = dict(self.mapping)
        return FinitePerm(tuple((a, m[b]) for a, b in other.mapping))

    def is_identity(self):
        return all(a == b for a, b in self.mapping)

    def pullback(self, S: FiniteSet) -> FiniteSet:
        inv = dict(self.inverse().mapping)
        return FiniteSet(S.space, frozenset(inv[p] for p in S.members))

    def text(self) -> str:
        return "fperm:" + ",".join(f"{a}>{b}" for a, b in self.mapping if a != b)


def identity_element(space) -> GroupElement:
    if isinstance(space, GridSpace):
        if space.lines[0].name == "cyclic":
            return CyclicPLAuto(())
        if space.tuple_points:
            return ProductAuto(tuple(PLAuto(()) for _ in range(space.dim)))
        return PLAuto(())
    if isinstance(space, CompactSpace):
        return FinSuppPerm(())
    if isinstance(space, CylinderSpace):
        return Flip(frozenset())
    if isinstance(space, FiniteSpace):
        return FinitePerm(tuple((p, p) for p in space.points))
    raise MapError(f"no identity element for {space!r}")


# ---------------------------------------------------------------------------
# actions and piecewise maps


@dataclass(frozen=True)
class Constant:
    point: object

    def apply(self, x):
        return self.point

    def pullback(self, A, space):
        return space.full() if A.contains(self.point) else space.empty()

    def after(self, h):
        return self

    def before(self, h):
        return Constant(h.apply(self.point))

    def text(self):
        return "const " + point_text(self.point)


@dataclass(frozen=True)
class Apply:
    g: GroupElement

    def apply(self, x):
        return self.g.apply(x)

    def pullback(self, A, space):
        return self.g.pullback(A)

    def after(self, h):
        """This action precomposed with h."""
        return Apply(self.g.compose(h))

    def before(self, h):
        """h applied after this action."""
        return Apply(h.compose(self.g))

    def text(self):
        return "apply " + self.g.text()


@dataclass(frozen=True)
class DenseCodense:
    """c0 on eventually-zero sequences, c1 elsewhere (both fibres dense)."""

    c0: CylinderPoint
    c1: CylinderPoint

    def apply(self, x):
        if not isinstance(x, CylinderPoint):
            raise MapError("DenseCodense acts on the cylinder space only")
        return self.c0 if x.tail == 0 else self.c1

    def pullback(self, A, space):
        raise MapError("preimages under a DenseCodense action are not in the symbolic class")

    def after(self, h):
        if not isinstance(h, Flip):
            raise MapError("DenseCodense can only be precomposed with finite flips")
        return self

    def before(self, h):
        return DenseCodense(h.apply(self.c0), h.apply(self.c1))

    def text(self):
        return f"dense-codense {self.c0.text()}|{self.c1.text()}"


@dataclass(frozen=True, eq=False)
class PiecewiseMap:
    space: object
    pieces: tuple  # ((region, action), ...)
    name: str = "map"
    ellis_witness: str | None = None
    claimed_in_ellis: bool = True
    net: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise MapError("a piecewise map needs at least one piece")
        dense = [a for _, a in self.pieces if isinstance(a, DenseCodense)]
        if dense and (len(self.pieces) != 1 or not isinstance(self.space, CylinderSpace)):
            raise MapError("DenseCodense must be the single piece of a cylinder-space map")
        union = self.space.empty()
        for i, (region, action) in enumerate(self.pieces):
            self.space.check_same(region.space)
            if not (union & region).is_empty():
                raise MapError(f"{self.name}: piece {i} overlaps an earlier piece")
            union = union | region
            if isinstance(action, Constant) and not self.space.contains_point(action.point):
                raise MapError(f"{self.name}: constant {action.point!r} outside the space")
        if union != self.space.full():
            raise MapError(f"{self.name}: pieces do not cover the space")

    @property
    def is_dense_codense(self) -> bool:
        return isinstance(self.pieces[0][1], DenseCodense)

    def piece_index(self, x) -> int:
        for i, (region, _) in enumerate(self.pieces):
            if region.contains(x):
                return i
        raise MapError(f"{self.name}: no piece contains {x!r}")

    def apply(self, x):
        if not self.space.contains_point(x):
            raise MapError(f"{x!r} is not a point of {self.space.spec}")
        return self.pieces[self.piece_index(x)][1].apply(x)

    __call__ = apply

    def preimage(self, A):
        out = self.space.empty()
        for region, action in self.pieces:
            out = out | (region & action.pullback(A, self.space))
        return out

    def preimage_clopen(self, A):
        if not A.is_clopen():
            raise MapError("preimage_clopen needs a clopen set")
        return self.preimage(A)

    def with_pieces(self, pieces, name=None) -> PiecewiseMap:
        return PiecewiseMap(self.space, tuple(pieces), name or self.name, self.ellis_witness,
                            self.claimed_in_ellis, None)

    def precompose(self, h: GroupElement) -> PiecewiseMap:
        """f ∘ h."""
        return self.with_pieces([(h.pullback(r), a.after(h)) for r, a in self.pieces], f"{self.name}∘{h.text()}")

    def postcompose(self, h: GroupElement) -> PiecewiseMap:
        """h ∘ f."""
        return self.with_pieces([(r, a.before(h)) for r, a in self.pieces], f"{h.text()}∘{self.name}")

    def restrict_pieces_to(self, D):
        """Pieces meeting D, with regions cut down to D."""
        return [(r & D, a) for r, a in self.pieces if not (r & D).is_empty()]

    def text(self) -> str:
        return "; ".join(f"{r.literal()} -> {a.text()}" for r, a in self.pieces)

    def __repr__(self):
        return f"PiecewiseMap({self.name})"


def from_group(space, g: GroupElement, name: str | None = None) -> PiecewiseMap:
    return PiecewiseMap(space, ((space.full(), Apply(g)),), name or g.text(),
                        ellis_witness="constant net", claimed_in_ellis=True, net=lambda i: g)


def apply_map(f: PiecewiseMap, x):
    return f.apply(x)


def preimage_clopen(f: PiecewiseMap, A):
    return f.preimage_clopen(A)


def conjugate(h: GroupElement, f: PiecewiseMap):
    """(f∘h⁻¹, h∘f∘h⁻¹)."""
    fh = f.precompose(h.inverse())
    return fh, fh.postcompose(h)


def push_partition(h: GroupElement, P):
    """h[P]: classes h[A]."""
    from .space import ExplicitPartition, ProductPartition
    if isinstance(P, ProductPartition):
        comps = h.comps if isinstance(h, ProductAuto) else (h,)
        return P.map_axes(lambda i, c: comps[i].push(c))
    return ExplicitPartition(P.space, [h.push(c) for c in P.classes()])


def monotone_sample(f: PiecewiseMap, height: int) -> list:
    """Named sample used for the order checks: low-height points plus piece endpoints."""
    space = f.space
    pts = {p.key: p for p in space.named_points(height)}
    for region, action in f.pieces:
        for g in region.grids:
            for i in g.live:
                w = g.witness(i)
                pts[w.key] = w
                if i % 2 == 0:
                    for q in (g.line.succ(w), g.line.pred(w)):
                        if q is not None:
                            pts[q.key] = q
    return [pts[k] for k in sorted(pts)]


def is_monotone(f: PiecewiseMap, height: int = 4) -> bool:
    return monotone_violation(f, height) is None


def monotone_violation(f: PiecewiseMap, height: int = 4):
    sp = f.space
    if not isinstance(sp, GridSpace) or sp.spec != "cutline":
        raise MapError("is_monotone needs the cut line")
    pts = monotone_sample(f, height)
    imgs = [f.apply(p) for p in pts]
    best = 0
    for j in range(1, len(pts)):
        if imgs[j].key < imgs[best].key:
            return (pts[best], pts[j])
        if imgs[j].key > imgs[best].key:
            best = j
    return None


def cyclic_between(a, b, c) -> bool:
    """C*(a, b, c): going around the circle from a one meets b before c."""
    ka, kb, kc = a.key, b.key, c.key
    return ka < kb < kc or kb < kc < ka or kc < ka < kb


def preserves_cyclic(f: PiecewiseMap, height: int = 3) -> bool:
    return cyclic_violation(f, height) is None


def cyclic_violation(f: PiecewiseMap, height: int = 3):
    sp = f.space
    if not isinstance(sp, GridSpace) or sp.spec != "cyclic":
        raise MapError("preserves_cyclic needs the cyclic space")
    pts = monotone_sample(f, height)
    imgs = [f.apply(p) for p in pts]
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        a, b, c = imgs[i], imgs[j], imgs[k]
        if a == b or b == c or a == c:
            continue
        if not cyclic_between(a, b, c):
            return (pts[i], pts[j], pts[k])
    return None


# ---------------------------------------------------------------------------
# textual group elements


def _parse_plauto(body: str) -> PLAuto:
    parts = body.split("|")
    if len(parts) not in (1, 3):
        raise MapError(f"bad PL map {body!r}: expected 'x:y;...' optionally followed by '|left|right'")
    try:
        pts = [tuple(parse_rational(t) for t in kp.split(":")) for kp in parts[0].split(";") if kp]
        slopes = [parse_rational(t) for t in parts[1:]]
    except ValueError as exc:
        raise MapError(f"bad PL map {body!r}: {exc}") from None
    if any(len(p) != 2 for p in pts):
        raise MapError(f"bad PL breakpoint list {parts[0]!r}")
    return PLAuto(tuple(pts), *slopes)


def _parse_cycles(body: str) -> list[list[str]]:
    body = body.strip()
    if not body:
        return []
    if not (body.startswith("(") and body.endswith(")")):
        raise MapError(f"bad cycle notation {body!r}")
    return [c.split() for c in body[1:-1].split(")(")]


def parse_element(space, text: str) -> GroupElement:
    """"plauto:x:y;...[|l|r]" on cut lines (one block per axis, comma separated, or one for all
    axes) and "perm:(a b)(c ...)" on the compactification and finite spaces."""
    kind, _, body = text.partition(":")
    if kind == "plauto" and isinstance(space, GridSpace) and space.lines[0].name == "cutline":
        blocks = body.split(",")
        comps = [_parse_plauto(b) for b in blocks]
        if not space.tuple_points:
            if len(comps) != 1:
                raise MapError("the cut line takes a single PL block")
            return comps[0]
        if len(comps) == 1:
            comps = comps * space.dim
        if len(comps) != space.dim:
            raise MapError(f"expected {space.dim} PL blocks, got {len(comps)}")
        return ProductAuto(tuple(comps))
    if kind == "perm" and isinstance(space, CompactSpace):
        try:
            cycles = [[int(t) for t in c] for c in _parse_cycles(body)]
        except ValueError:
            raise MapError(f"bad permutation {text!r}") from None
        return FinSuppPerm.from_cycles(cycles)
    if kind == "perm" and isinstance(space, FiniteSpace):
        return FinitePerm.from_cycles(space.points, _parse_cycles(body))
    raise MapError(f"cannot parse {text!r} as a group element of {space.spec}")

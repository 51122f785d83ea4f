"""Factor maps (π, ρ), the induced transfer θ on piecewise maps, and the lemma checks.

For an equivariant continuous surjection π with group epimorphism ρ, every
map f in the enveloping semigroup of the source has a unique θ(f) on the
target with θ(f)∘π = π∘f. Pulling a target partition back along π, the
derivative chain of f sits inside the preimage of the chain of θ(f), with
equality when π is open.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .engine import EngineError, _agree, beta_of_pair, iterate_derivative
from .maps import Apply, Constant, FinSuppPerm, MapError, PiecewiseMap, ProductAuto
from .space import (
    COMPACT, POINT, AxisPartition, CompactSet, ExplicitPartition, Iso, Limit, ProductPartition,
    ProductPoint, parse_space, point_text, trivial_partition,
)
from .space.grid import GridSet


class FactorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FactorMap:
    source: object
    target: object
    point_map: Callable
    group_map: Callable
    set_preimage: Callable
    image: Callable
    is_open: bool
    name: str = "factor"

    def __call__(self, x):
        return self.point_map(x)

    def clopen_preimage(self, S):
        if not S.is_clopen():
            raise FactorError("clopen_preimage needs a clopen set")
        out = self.set_preimage(S)
        if not out.is_clopen():
            raise FactorError(f"{self.name}: preimage of a clopen set is not clopen")
        return out

    def image_is_clopen(self, S) -> bool:
        return self.image(S).is_clopen()

    def equivariance_violation(self, elements, height: int = 3):
        """(g, x) with ρ(g)(π(x)) ≠ π(g(x)), or None."""
        pts = self.source.named_points(height)
        for g in elements:
            rg = self.group_map(g)
            for x in pts:
                if rg.apply(self.point_map(x)) != self.point_map(g.apply(x)):
                    return g, x
        return None


# ---------------------------------------------------------------------------
# constructions


def projection_factor(n: int, k: int) -> FactorMap:
    """multiorder:n → multiorder:k, keeping the first k coordinates."""
    if not 1 <= k < n:
        raise FactorError(f"projection needs 1 <= k < n, got n={n}, k={k}")
    src, dst = parse_space(f"multiorder:{n}"), parse_space(f"multiorder:{k}")
    extra = src.full().grids[k:]
    extra_atoms = list(itertools.product(*(g.live for g in extra)))

    def point_map(x):
        return ProductPoint(x.coords[:k])

    def group_map(g):
        if not isinstance(g, ProductAuto) or len(g.comps) != n:
            raise FactorError(f"{g!r} is not an element of the arity-{n} group")
        return ProductAuto(g.comps[:k])

    def set_preimage(S: GridSet) -> GridSet:
        dst.check_same(S.space)
        return GridSet(src, S.grids + extra, (t + e for t in S.atoms for e in extra_atoms))

    def image(S: GridSet) -> GridSet:
        src.check_same(S.space)
        # every stored atom is nonempty, so it projects onto its first k factors
        return GridSet(dst, S.grids[:k], (t[:k] for t in S.atoms)).compact()

    return FactorMap(src, dst, point_map, group_map, set_preimage, image, True, f"proj:{n}:{k}")


def singleton_factor(space) -> FactorMap:
    """Collapse everything to a point."""
    from .maps import identity_element

    def set_preimage(S):
        POINT.check_same(S.space)
        return space.full() if S.contains("*") else space.empty()

    def image(S):
        return POINT.empty() if S.is_empty() else POINT.full()

    return FactorMap(space, POINT, lambda x: "*", lambda g: identity_element(POINT),
                     set_preimage, image, True, f"singleton:{space.spec}")


def shift_down_factor() -> FactorMap:
    """Synthetic non-open factor of the one-point compactification onto itself.

    Iso(0) is glued to the limit and Iso(k+1) becomes Iso(k). The acting group
    is the finite-support permutations fixing 0, with ρ(g)(k) = g(k+1) - 1.
    Preimages of clopen sets are clopen, but the image of the open point
    {Iso(0)} is {Limit}, which is not open.
    """
    space = COMPACT

    def point_map(x):
        if x.k is None or x.k == 0:
            return Limit
        return Iso(x.k - 1)

    def group_map(g):
        if not isinstance(g, FinSuppPerm) or g._map(0) != 0:
            raise FactorError(f"{g!r} does not fix iso:0")
        return FinSuppPerm(tuple((k - 1, v - 1) for k, v in g.mapping if k != 0))

    def set_preimage(S: CompactSet) -> CompactSet:
        space.check_same(S.space)
        isos = {k + 1 for k in S.isos}
        if S.limit != S.cofinite:
            isos.add(0)
        return CompactSet(space, S.cofinite, frozenset(isos), S.limit)

    def image(S: CompactSet) -> CompactSet:
        space.check_same(S.space)
        isos = frozenset(k - 1 for k in S.isos if k >= 1)
        return CompactSet(space, S.cofinite, isos, S.limit or S.contains(Iso(0)))

    return FactorMap(space, space, point_map, group_map, set_preimage, image, False, "shift-down")


def parse_factor(spec: str) -> FactorMap:
    """CLI factor specs: "proj:<n>:<k>", "singleton:<system or space>", "shift-down"."""
    parts = spec.split(":", 1)
    if parts[0] == "proj":
        try:
            n, k = (int(t) for t in parts[1].split(":"))
        except (IndexError, ValueError):
            raise FactorError(f"bad projection spec {spec!r}") from None
        return projection_factor(n, k)
    if parts[0] == "singleton" and len(parts) == 2:
        from .catalog import CatalogError, build_system
        try:
            return singleton_factor(build_system(parts[1]).space)
        except CatalogError:
            return singleton_factor(parse_space(parts[1]))
    if spec == "shift-down":
        return shift_down_factor()
    raise FactorError(f"unknown factor spec {spec!r}")


# ---------------------------------------------------------------------------
# transfer and pullback


def _transfer_action(F: FactorMap, action):
    if F.target is POINT:
        return Constant("*")
    if isinstance(action, Constant):
        return Constant(F.point_map(action.point))
    if isinstance(action, Apply):
        return Apply(F.group_map(action.g))
    raise FactorError(f"cannot transfer action {action!r}")


def transfer_map(F: FactorMap, f: PiecewiseMap, sample_height: int = 3) -> PiecewiseMap:
    """θ(f): the map on the target with θ(f)(π(x)) = π(f(x))."""
    F.source.check_same(f.space)
    imaged = [(F.image(r), _transfer_action(F, a)) for r, a in f.pieces]
    for (k, (Ik, ak)), (j, (Ij, aj)) in itertools.combinations(enumerate(imaged), 2):
        if not _agree(ak, aj, Ik & Ij):
            raise FactorError(f"{f.name}: pieces {k} and {j} project incoherently "
                              f"({f.pieces[k][1].text()} vs {f.pieces[j][1].text()})")
    pieces = []
    covered = F.target.empty()
    for region, action in imaged:
        fresh = region - covered
        if not fresh.is_empty():
            pieces.append((fresh, action))
            covered = covered | fresh
    try:
        theta = PiecewiseMap(F.target, tuple(pieces), f"θ({f.name})", f.ellis_witness, f.claimed_in_ellis)
    except MapError as exc:
        raise FactorError(f"{f.name}: {exc}") from None
    for x in F.source.named_points(sample_height):
        if theta.apply(F.point_map(x)) != F.point_map(f.apply(x)):
            raise FactorError(f"{f.name}: θ(f)(π(x)) ≠ π(f(x)) at x = {point_text(x)}")
    return theta


def pullback_partition(F: FactorMap, P):
    """π⁻¹[P]: the classes π⁻¹[A] for A ∈ P."""
    F.target.check_same(P.space)
    if F.target is POINT:
        return trivial_partition(F.source)
    if isinstance(P, ProductPartition) and F.name.startswith("proj:"):
        extra = [AxisPartition(F.source.axis_space(i), [F.source.axis_space(i).full()])
                 for i in range(len(P.axes), F.source.dim)]
        return ProductPartition(F.source, list(P.axes) + extra, P.level)
    return ExplicitPartition(F.source, [F.set_preimage(A) for A in P.classes()], P.level)


# ---------------------------------------------------------------------------
# lemma checks


@dataclass
class FactorLemmaReport:
    factor: str
    map: str
    alpha_max: int
    stages: list  # (α, lhs literal, rhs literal, included, equal)
    beta_source: object
    beta_target: object
    is_open: bool

    @property
    def inclusion_holds(self) -> bool:
        return all(s[3] for s in self.stages)

    @property
    def equality_holds(self) -> bool:
        return all(s[4] for s in self.stages)

    @property
    def strict_alphas(self) -> list:
        return [s[0] for s in self.stages if s[3] and not s[4]]

    @property
    def rank_le(self) -> bool | None:
        return self.beta_source.le(self.beta_target)

    @property
    def ok(self) -> bool:
        if not self.inclusion_holds or self.rank_le is False:
            return False
        if self.is_open:
            return self.equality_holds and self.beta_source == self.beta_target
        return True

    def to_json(self):
        return {
            "factor": self.factor, "map": self.map, "alpha_max": self.alpha_max, "is_open": self.is_open,
            "stages": [{"alpha": a, "lhs": l, "rhs": r, "included": i, "equal": e}
                       for a, l, r, i, e in self.stages],
            "beta_source": self.beta_source.to_json(), "beta_target": self.beta_target.to_json(),
            "inclusion": self.inclusion_holds, "equality": self.equality_holds,
            "strict_alphas": self.strict_alphas, "ok": self.ok,
        }


def _stage(chain, alpha: int, space):
    if alpha < len(chain.stages):
        return chain.stages[alpha]
    if chain.termination == "Empty":
        return space.empty()
    if chain.termination == "FixedPoint":
        return chain.stages[-1]
    raise EngineError("derivative chain capped before the requested stage")


def check_factor_lemmas(F: FactorMap, f: PiecewiseMap, D, P, alpha_max: int = 3, cap: int = 64,
                        theta: PiecewiseMap | None = None) -> FactorLemmaReport:
    theta = transfer_map(F, f) if theta is None else theta
    PP = pullback_partition(F, P)
    Y = F.set_preimage(D)
    src_chain = iterate_derivative(Y, f, PP, cap)
    dst_chain = iterate_derivative(D, theta, P, cap)
    stages = []
    for alpha in range(alpha_max + 1):
        lhs = _stage(src_chain, alpha, F.source)
        rhs = F.set_preimage(_stage(dst_chain, alpha, F.target))
        stages.append((alpha, lhs.literal(), rhs.literal(), lhs.issubset(rhs), lhs == rhs))
    return FactorLemmaReport(F.name, f.name, alpha_max, stages,
                             beta_of_pair(f, PP, cap, Y), beta_of_pair(theta, P, cap, D), F.is_open)


# ---------------------------------------------------------------------------
# synthetic example


def shift_down_example():
    """(F, f, θ(f)) on the compactification with strict inclusion at α = 1 for the level-1 partition."""
    F = shift_down_factor()
    X = COMPACT
    rest = X.tail(1) - X.singleton(Limit)
    f = PiecewiseMap(X, ((X.singleton(Iso(0)), Constant(Iso(0))),
                         (rest, Constant(Iso(1))),
                         (X.singleton(Limit), Constant(Limit))),
                     name="glue-tail", claimed_in_ellis=False)
    return F, f, transfer_map(F, f)

"""Property suites over the catalog grid (systems × maps × levels × named points).

Each law returns a :class:`LawResult` listing failing inputs verbatim. Cells
of the grid are independent, so :func:`run_laws` may fan them out to worker
processes; results are always reported in grid order.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .catalog import build_system
from .engine import (
    Finite, beta_of_map, beta_of_pair, beta_of_system, cb_point_rank, derivative,
    is_continuous, iterate_derivative, oscillation_directions, point_rank,
)
from .factor import (
    check_factor_lemmas, projection_factor, shift_down_example, singleton_factor, transfer_map,
)
from .maps import FinSuppPerm, conjugate, push_partition
from .oracle import brute_force_derivative, consistency_check
from .space import (
    FiniteSpace, GridSpace, POINT, canonical_partition, point_text, trivial_partition,
)


@dataclass(frozen=True)
class Grid:
    name: str
    systems: tuple
    levels: tuple
    height: int
    alpha_max: int = 3


GRIDS = {
    "small": Grid("small", ("acf", "dlo", "cyclic", "multiorder:2", "cylinder", "finite:rotation-z4"),
                  (1, 2), 3),
    "full": Grid("full", ("acf", "dlo", "cyclic", "multiorder:1", "multiorder:2", "multiorder:3",
                          "cylinder", "finite:rotation-z4", "finite:one-point", "finite:swap-pairs"),
                 (1, 2, 3), 4),
}


@dataclass
class LawResult:
    law: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)

    def merge(self, other: LawResult):
        self.cases += other.cases
        self.failures.extend(other.failures)

    def to_json(self):
        return {"law": self.law, "cases": self.cases, "ok": self.ok, "failures": self.failures}


def _closed_samples(S, f, P):
    """A few closed subsets of the space: level-1 atoms' closures and the first derivative."""
    space = S.space
    out = [space.full()]
    for A in itertools.islice(canonical_partition(space, 1).classes(), 4):
        out.append(A.closure())
    D1 = derivative(space.full(), f, P)
    if not D1.is_empty():
        out.append(D1)
    return out


def _stage(chain, alpha, space):
    if alpha < len(chain.stages):
        return chain.stages[alpha]
    return chain.stages[-1] if chain.termination == "FixedPoint" else space.empty()


def _sample(space, height, extra=()):
    pts = {}
    for p in list(space.named_points(height)) + list(extra):
        pts[point_text(p)] = p
    return list(pts.values())


# ---------------------------------------------------------------------------
# laws: each takes (system, grid) and checks every map × level of that system


def law_monotonicity(S, grid: Grid) -> LawResult:
    """Y1 ⊆ Y2 gives nested derivatives and nested α-stages."""
    res = LawResult("monotonicity")
    for (name, f), level in itertools.product(S.maps.items(), grid.levels):
        P = canonical_partition(S.space, level)
        sets = _closed_samples(S, f, P)
        chains = [iterate_derivative(Y, f, P, 16) for Y in sets]
        for (i, Y1), (j, Y2) in itertools.product(enumerate(sets), repeat=2):
            if i == j or not Y1.issubset(Y2):
                continue
            res.cases += 1
            for alpha in range(1, grid.alpha_max + 1):
                a, b = _stage(chains[i], alpha, S.space), _stage(chains[j], alpha, S.space)
                if not a.issubset(b):
                    res.fail(f"{S.spec} {name} level {level}: stage {alpha} of {Y1.literal()} "
                             f"not inside stage {alpha} of {Y2.literal()}")
                    break
    return res


def law_refinement(S, grid: Grid) -> LawResult:
    """Finer partitions never lower the rank; the one-class partition gives rank 0."""
    res = LawResult("refinement")
    parts = [canonical_partition(S.space, l) for l in grid.levels]
    for name, f in S.maps.items():
        res.cases += 1
        betas = [beta_of_pair(f, P) for P in parts]
        for (l1, P1, b1), (l2, P2, b2) in itertools.combinations(zip(grid.levels, parts, betas), 2):
            if not P2.refines(P1):
                res.fail(f"{S.spec}: level {l2} does not refine level {l1}")
            if b1.le(b2) is False:
                res.fail(f"{S.spec} {name}: β at level {l1} = {b1.text()} > β at level {l2} = {b2.text()}")
        if beta_of_pair(f, trivial_partition(S.space)) != Finite(0):
            res.fail(f"{S.spec} {name}: nonzero rank against the one-class partition")
    return res


def law_subgroup(S, grid: Grid) -> LawResult:
    """Dropping maps from the catalog can only lower the system rank."""
    res = LawResult("subgroup")
    maps = S.ellis_maps()
    top = beta_of_system(maps, max(grid.levels))
    for k in range(1, len(maps)):
        res.cases += 1
        sub = beta_of_system(maps[:k], max(grid.levels))
        if sub.le(top) is False:
            res.fail(f"{S.spec}: first {k} maps give {sub.text()} > {top.text()}")
    return res


def law_conjugation(S, grid: Grid) -> LawResult:
    """h[(Y)^α_{f,P}] = (h[Y])^α_{f∘h⁻¹,P} = (h[Y])^α_{h∘f∘h⁻¹,h[P]}, and bR is transported by h."""
    res = LawResult("conjugation")
    pts = S.space.named_points(min(grid.height, 3))
    for h, (name, f), level in itertools.product(S.elements, S.maps.items(), grid.levels):
        P = canonical_partition(S.space, level)
        fh, hfh = conjugate(h, f)
        hP = push_partition(h, P)
        for Y in _closed_samples(S, f, P)[:2]:
            res.cases += 1
            hY = h.push(Y)
            base = iterate_derivative(Y, f, P, 16)
            c1 = iterate_derivative(hY, fh, P, 16)
            c2 = iterate_derivative(hY, hfh, hP, 16)
            tag = f"{S.spec} {name} h={h.text()} level {level} Y={Y.literal()}"
            for alpha in range(grid.alpha_max + 1):
                lhs = h.push(_stage(base, alpha, S.space))
                if lhs != _stage(c1, alpha, S.space):
                    res.fail(f"{tag}: h[Y^{alpha}] ≠ stage {alpha} for f∘h⁻¹")
                if lhs != _stage(c2, alpha, S.space):
                    res.fail(f"{tag}: h[Y^{alpha}] ≠ stage {alpha} for h∘f∘h⁻¹ against h[P]")
            if base.rank(16) != c1.rank(16):
                res.fail(f"{tag}: rank changes under conjugation")
            if Y == S.space.full():
                for x in pts:
                    if point_rank(f, P, x, chain=base) != point_rank(fh, P, h.apply(x), chain=c1):
                        res.fail(f"{tag}: bR({point_text(x)}) ≠ bR(h({point_text(x)}))")
    return res


def law_br_le_cb(S, grid: Grid) -> LawResult:
    """bR_{f,P}(x) ⩽ CB(x) on every named point."""
    res = LawResult("br-le-cb")
    pts = S.space.named_points(grid.height)
    for (name, f), level in itertools.product(S.maps.items(), grid.levels):
        P = canonical_partition(S.space, level)
        chain = iterate_derivative(S.space.full(), f, P)
        for x in pts:
            res.cases += 1
            b, c = point_rank(f, P, x, chain=chain), cb_point_rank(S.space, x)
            if b.le(c) is not True:
                res.fail(f"{S.spec} {name} level {level}: bR({point_text(x)}) = {b.text()} > CB = {c.text()}")
    return res


def law_restriction(S, grid: Grid) -> LawResult:
    """β(f|_D, P) ⩽ sup of bR_{f|_D,P} over a sample of D containing each stage's witness."""
    res = LawResult("restriction")
    for (name, f), level in itertools.product(S.maps.items(), grid.levels):
        P = canonical_partition(S.space, level)
        for D in _closed_samples(S, f, P):
            res.cases += 1
            chain = iterate_derivative(D, f, P)
            extra = [st.witness() for st in chain.stages if not st.is_empty()]
            sample = [x for x in _sample(S.space, grid.height, extra) if D.contains(x)]
            beta = chain.rank(64)
            ranks = [point_rank(f, P, x, Y=D, chain=chain) for x in sample]
            best = max(ranks, key=lambda r: (r.kind == "infinite", r.n or 0), default=Finite(0))
            if beta.le(best) is not True:
                res.fail(f"{S.spec} {name} level {level} D={D.literal()}: β = {beta.text()} "
                         f"exceeds sampled bR sup {best.text()}")
    return res


def law_directions(S, grid: Grid) -> LawResult:
    """On ordered lines: first-derivative points oscillate in some direction, never two in the same
    direction when their images share a class."""
    res = LawResult("directions")
    sp = S.space
    if not (isinstance(sp, GridSpace) and sp.dim == 1 and not sp.tuple_points and sp.lines[0].name == "cutline"):
        return res
    for (name, f), level in itertools.product(S.maps.items(), grid.levels):
        P = canonical_partition(sp, level)
        D1 = derivative(sp.full(), f, P)
        res.cases += 1
        if not D1.is_finite():
            res.fail(f"{S.spec} {name} level {level}: first derivative {D1.literal()} is not finite")
            continue
        dirs = {}
        for x in D1.points():
            dirs[x] = oscillation_directions(f, P, x)
            if not dirs[x]:
                res.fail(f"{S.spec} {name} level {level}: {point_text(x)} oscillates in no direction")
        if not f.claimed_in_ellis:
            continue
        for x, y in itertools.combinations(D1.points(), 2):
            if P.same_class(f.apply(x), f.apply(y)) and dirs[x] & dirs[y]:
                res.fail(f"{S.spec} {name} level {level}: {point_text(x)} and {point_text(y)} "
                         f"share direction(s) {sorted(dirs[x] & dirs[y])}")
    return res


def law_finiteness(S, grid: Grid) -> LawResult:
    """Ordered one-dimensional systems: first derivatives are finite, so β ⩽ 1."""
    res = LawResult("finiteness")
    sp = S.space
    if not (isinstance(sp, GridSpace) and sp.dim == 1 and not sp.tuple_points):
        return res
    for (name, f), level in itertools.product(S.maps.items(), grid.levels):
        res.cases += 1
        P = canonical_partition(sp, level)
        D1 = derivative(sp.full(), f, P)
        if not D1.is_finite() or beta_of_pair(f, P).le(Finite(1)) is not True:
            res.fail(f"{S.spec} {name} level {level}: first derivative {D1.literal()}")
    return res


def law_continuity(S, grid: Grid) -> LawResult:
    """is_continuous(f) ⇔ β(f) = 0."""
    res = LawResult("continuity")
    for name, f in S.maps.items():
        res.cases += 1
        cont = is_continuous(f, max(grid.levels))
        zero = beta_of_map(f, max(grid.levels)).value == Finite(0)
        if cont != zero:
            res.fail(f"{S.spec} {name}: continuous={cont} but rank zero={zero}")
    return res


def law_osc_consistency(S, grid: Grid) -> LawResult:
    """Symbolic derivative versus the definition-level witness search."""
    res = LawResult("osc-consistency")
    for (name, f), level in itertools.product(S.maps.items(), grid.levels):
        P = canonical_partition(S.space, level)
        rep = consistency_check(f, P, height=grid.height, depth=3)
        res.cases += rep.total
        for x in rep.hard_failures:
            res.fail(f"{S.spec} {name} level {level}: disagreement at {point_text(x)}")
        if isinstance(S.space, FiniteSpace):
            for bits in itertools.product((0, 1), repeat=len(S.space.points)):
                Y = S.space.finite_set([p for p, b in zip(S.space.points, bits) if b])
                res.cases += 1
                if derivative(Y, f, P) != brute_force_derivative(Y, f, P):
                    res.fail(f"{S.spec} {name}: derivative of {Y.literal()} differs from brute force")
    return res


def _factor_cases(S, grid: Grid):
    """(factor, map, target partitions) triples attached to system S."""
    out = []
    sp = S.space
    if S.spec.startswith("multiorder:"):
        n = sp.dim
        for k in range(1, n):
            F = projection_factor(n, k)
            for f in S.maps.values():
                out.append((F, f, [canonical_partition(F.target, l) for l in grid.levels]))
    out.extend((singleton_factor(sp), f, [trivial_partition(POINT)]) for f in S.maps.values())
    if S.spec == "acf":
        F, f, _ = shift_down_example()
        out.append((F, f, [canonical_partition(F.target, l) for l in grid.levels]))
    return out


def law_factor(S, grid: Grid) -> LawResult:
    """Equivariance, θ(f)∘π = π∘f, stage inclusion (equality when open), and the rank comparison."""
    res = LawResult("factor")
    for F, f, parts in _factor_cases(S, grid):
        tag = f"{F.name} {f.name}"
        elements = S.elements
        if F.name == "shift-down":
            elements = [FinSuppPerm.from_cycles(c) for c in ([[1, 2]], [[1, 2, 3]], [[2, 5], [3, 4]])]
        if F.name.startswith("proj:") or F.target is POINT or F.name == "shift-down":
            bad = F.equivariance_violation(elements, height=min(grid.height, 3))
            if bad:
                res.fail(f"{tag}: ρ(g)π(x) ≠ π(gx) for g={bad[0].text()}, x={point_text(bad[1])}")
        theta = transfer_map(F, f)
        for P in parts:
            targets = [F.target.full()] + [A.closure() for A in itertools.islice(canonical_partition(F.target, 1).classes(), 2)] \
                if F.target is not POINT else [F.target.full()]
            for D in targets:
                res.cases += 1
                rep = check_factor_lemmas(F, f, D, P, grid.alpha_max, theta=theta)
                if not rep.ok:
                    res.fail(f"{tag} D={D.literal()}: {rep.to_json()}")
        if F.is_open and F.name.startswith("proj:"):
            for A in itertools.islice(canonical_partition(F.source, 1).classes(), 8):
                res.cases += 1
                if not F.image_is_clopen(A):
                    res.fail(f"{tag}: image of clopen {A.literal()} is not clopen")
    return res


LAWS = {
    "monotonicity": law_monotonicity,
    "refinement": law_refinement,
    "subgroup": law_subgroup,
    "conjugation": law_conjugation,
    "br-le-cb": law_br_le_cb,
    "restriction": law_restriction,
    "directions": law_directions,
    "finiteness": law_finiteness,
    "continuity": law_continuity,
    "factor": law_factor,
    "osc-consistency": law_osc_consistency,
}


def _run_cell(cell):
    law, spec, grid_name = cell
    return LAWS[law](build_system(spec), GRIDS[grid_name])


def workers() -> int:
    try:
        n = int(os.environ.get("OSCRANK_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def run_laws(names, grid: str = "small", max_workers: int | None = None) -> list[LawResult]:
    """Run the named laws over the grid; one merged result per law, in the order given."""
    if grid not in GRIDS:
        raise KeyError(f"unknown grid {grid!r}")
    names = list(LAWS) if names == ["all"] or names == "all" else list(names)
    for n in names:
        if n not in LAWS:
            raise KeyError(f"unknown law {n!r}")
    cells = [(law, spec, grid) for law in names for spec in GRIDS[grid].systems]
    n = max_workers or workers()
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            parts = list(ex.map(_run_cell, cells))
    else:
        parts = [_run_cell(c) for c in cells]
    out = {law: LawResult(law) for law in names}
    for (law, _, _), part in zip(cells, parts):
        out[law].merge(part)
    return [out[law] for law in names]

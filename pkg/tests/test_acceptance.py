"""Acceptance criteria 1-10, each at its stated tolerance.

Every criterion records a JSON-able result and prints one pass/fail line in
the terminal summary. Criterion 10 recomputes all of them in a second pass
and compares the serialized reports byte for byte. Timings are reported on
the summary lines but kept out of the compared JSON.

Run directly (python3 tests/test_acceptance.py) for the same lines without pytest.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import json
import time

import pytest

from oscrank.catalog import build_system
from oscrank.cli import main as cli_main
from oscrank.engine import (
    INFINITE, Finite, beta_of_map, beta_of_pair, derivative, is_continuous, is_fragmented_report,
    iterate_derivative, rank_sup,
)
from oscrank.factor import check_factor_lemmas, projection_factor, shift_down_example, singleton_factor
from oscrank.laws import run_laws
from oscrank.oracle import brute_force_derivative, witness_search
from oscrank.report import dumps
from oscrank.space import (
    COMPACT, POINT, canonical_partition, parse_set, trivial_partition,
)

LEMMA_LAWS = ["monotonicity", "refinement", "subgroup", "conjugation", "br-le-cb", "restriction",
              "directions", "finiteness", "continuity"]
FINITE_SYSTEMS = ["finite:rotation-z4", "finite:one-point", "finite:swap-pairs"]

SUMMARY: dict[int, str] = {}
REPORTS: dict[int, dict] = {}


def _line(n, ok, detail, seconds):
    SUMMARY[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}  ({seconds:.1f}s)"


def _cli_json(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


# -- criteria ---------------------------------------------------------------------


def c1():
    rows, ok = [], True
    for n in (1, 2, 3, 4):
        t0 = time.perf_counter()
        code, out = _cli_json(["rank", "--system", f"multiorder:{n}", "--map", "shift-limit", "--level", "1"])
        dt = time.perf_counter() - t0
        rank = json.loads(out)["rank"]
        good = code == 0 and rank == {"finite": n} and dt < 5.0
        ok &= good
        rows.append({"n": n, "rank": rank, "under_5s": dt < 5.0})
    return ok, {"rows": rows}, "multiorder:n shift-limit level 1 = Finite(n), n=1..4, each < 5 s"


def _at_least_j_at_minus_inf(space, n, j):
    """Union of boxes with at least j coordinates pinned to -inf."""
    out = space.empty()
    for k in range(j, n + 1):
        for pinned in itertools.combinations(range(n), k):
            out = out | parse_set(space, "×".join("{-inf}" if i in pinned else "[-inf,+inf]" for i in range(n)))
    return out


def c2():
    S = build_system("multiorder:3")
    chain = iterate_derivative(S.space.full(), S.map("shift-limit"), canonical_partition(S.space, 1))
    expected = [_at_least_j_at_minus_inf(S.space, 3, j) for j in range(4)] + [S.space.empty()]
    ok = chain.termination == "Empty" and chain.stages == expected
    return ok, {"stages": [s.literal() for s in chain.stages]}, \
        "multiorder:3 stage j = '>= j coords at -inf', j=0..3, then empty"


def c3():
    S = build_system("dlo")
    ok, rows = True, {}
    for name, f in S.maps.items():
        per = []
        for level in (1, 2, 3, 4):
            P = canonical_partition(S.space, level)
            d1 = derivative(S.space.full(), f, P)
            b = beta_of_pair(f, P)
            good = d1.is_finite() and b.le(Finite(1)) is True
            ok &= good
            per.append({"level": level, "first": d1.literal(), "beta": b.to_json()})
        rows[name] = per
    f = S.map("stretch-limit")
    witnessed = []
    for level in (1, 2, 3, 4):
        P = canonical_partition(S.space, level)
        d1 = derivative(S.space.full(), f, P)
        b = beta_of_pair(f, P)
        rep = witness_search(f, P, d1.witness(), depth=level)
        good = b == Finite(1) and rep.levels[-1].kind == "Witnessed" and rep.all_witnessed
        ok &= good
        witnessed.append({"level": level, "point": d1.literal(), "v1": rep.levels[-1].to_json()["v1"],
                          "v2": rep.levels[-1].to_json()["v2"]})
    return ok, {"maps": rows, "stretch_limit": witnessed}, \
        "dlo: finite first derivatives, beta <= 1 at levels 1..4; stretch-limit Finite(1) with witnesses"


def c4():
    S = build_system("cyclic")
    vals = {name: beta_of_map(f, 3).value for name, f in S.maps.items() if f.claimed_in_ellis}
    system = rank_sup(vals.values())
    f = S.map("cyclic-collapse")
    firsts, ok = {}, system == Finite(1) and all(v.is_finite for v in vals.values())
    for level in (2, 3):
        P = canonical_partition(S.space, level)
        d1 = derivative(S.space.full(), f, P)
        rep = witness_search(f, P, d1.witness(), depth=level)
        ok &= d1 == parse_set(S.space, "{0+}") and rep.all_witnessed
        firsts[level] = d1.literal()
    return ok, {"system": system.to_json(), "first_derivative": firsts}, \
        "cyclic beta(X,G) = Finite(1); cyclic-collapse first derivative = {0+} (levels >= 2)"


def c5():
    S = build_system("acf")
    cont = {name: is_continuous(f) for name, f in S.maps.items()}
    vals = [beta_of_map(f, 3).value for f in S.ellis_maps()]
    ok = all(cont.values()) and all(v == Finite(0) for v in vals)
    return ok, {"continuous": cont, "system": Finite(0).to_json() if ok else [v.to_json() for v in vals]}, \
        "acf maps continuous, beta(X,G) = Finite(0)"


def c6():
    S = build_system("cylinder")
    rep = is_fragmented_report(S.map("tail-map"))
    ok = (rep.verdict == "NotFragmented" and rep.level == 1 and rep.fixed == S.space.full()
          and rep.beta == INFINITE and rep.iterations <= 2)
    return ok, {"verdict": rep.verdict, "level": rep.level, "fixed": rep.fixed.literal(),
                "iterations": rep.iterations, "beta": rep.beta.to_json()}, \
        "tail-map NotFragmented, fixed set = whole space at level 1, Infinite, <= 2 iterations"


def c7():
    t0 = time.perf_counter()
    results = run_laws(LEMMA_LAWS, "full")
    dt = time.perf_counter() - t0
    fails = sum(len(r.failures) for r in results)
    ok = fails == 0 and dt < 600
    return ok, {"laws": [r.to_json() for r in results], "under_10min": dt < 600}, \
        f"lemma suite on the full grid: {sum(r.cases for r in results)} cases, {fails} failures, < 10 min"


def c8():
    F = projection_factor(3, 1)
    proj = check_factor_lemmas(F, build_system("multiorder:3").map("shift-limit"), F.target.full(),
                               canonical_partition(F.target, 1), alpha_max=3)
    G, g, theta = shift_down_example()
    strict = check_factor_lemmas(G, g, COMPACT.full(), canonical_partition(COMPACT, 1), theta=theta)
    dlo = build_system("dlo")
    sing = [check_factor_lemmas(singleton_factor(dlo.space), f, POINT.full(), trivial_partition(POINT))
            for f in dlo.maps.values()]
    ok = (proj.equality_holds and proj.beta_source == proj.beta_target
          and strict.inclusion_holds and bool(strict.strict_alphas)
          and all(r.beta_source == Finite(0) for r in sing))
    return ok, {"projection": proj.to_json(), "non_open": strict.to_json(),
                "singleton": [r.beta_source.to_json() for r in sing]}, \
        "projection 3->1 equality + rank equality; non-open strict inclusion; singleton rank 0"


def c9():
    (res,) = run_laws(["osc-consistency"], "full")
    brute = {}
    for spec in FINITE_SYSTEMS:
        S = build_system(spec)
        X = S.space.full()
        for name, f in S.maps.items():
            for level in (1, 2, 3):
                P = canonical_partition(S.space, level)
                brute[f"{spec}|{name}|{level}"] = brute_force_derivative(X, f, P) == derivative(X, f, P)
    ok = res.ok and all(brute.values())
    return ok, {"consistency": res.to_json(), "brute_force": brute}, \
        f"consistency_check on the full grid ({res.cases} cases): {len(res.failures)} hard failures; " \
        f"finite systems match brute force"


CRITERIA = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9}


def run_criterion(n):
    t0 = time.perf_counter()
    ok, report, detail = CRITERIA[n]()
    return ok, report, detail, time.perf_counter() - t0


def c10():
    second = {n: CRITERIA[n]()[1] for n in CRITERIA}
    first = {n: REPORTS[n] for n in CRITERIA if n in REPORTS}
    missing = [n for n in CRITERIA if n not in first]
    for n in missing:
        first[n] = CRITERIA[n]()[1]
    a = dumps({str(n): first[n] for n in CRITERIA})
    b = dumps({str(n): second[n] for n in CRITERIA})
    return a.encode() == b.encode(), {"bytes": len(a)}, "two runs of the suite give byte-identical JSON"


# -- pytest entry points ------------------------------------------------------------


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, report, detail, dt = run_criterion(n)
    REPORTS[n] = report
    _line(n, ok, detail, dt)
    assert ok, dumps(report)[:2000]


def test_criterion_10_determinism():
    t0 = time.perf_counter()
    ok, report, detail = c10()
    _line(10, ok, detail, time.perf_counter() - t0)
    assert ok


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        ok, report, detail, dt = run_criterion(n)
        REPORTS[n] = report
        _line(n, ok, detail, dt)
        print(SUMMARY[n], flush=True)
    t0 = time.perf_counter()
    ok, _, detail = c10()
    _line(10, ok, detail, time.perf_counter() - t0)
    print(SUMMARY[10])

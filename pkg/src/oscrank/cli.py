"""Command line: oscrank {rank,derive,check,factor,witness}.

Exit codes: 0 success, 1 a law check failed, 2 bad input (unknown system,
map, flag or malformed set literal), 3 a rank hit the iteration cap.
"""

from __future__ import annotations

import argparse
import sys
import time

from .catalog import CatalogError, build_system, resolve_map
from .engine import DEFAULT_CAP, EngineError, beta_of_map, iterate_derivative, rank_sup
from .factor import FactorError, check_factor_lemmas, parse_factor, shift_down_example
from .laws import GRIDS, LAWS, run_laws
from .maps import MapError
from .oracle import witness_search
from .report import chain_json, dumps, run_report, text_lines
from .space import POINT, LiteralError, canonical_partition, parse_point, parse_set, trivial_partition

DEFAULT_LEVEL = 3

SET_GRAMMAR = """\
set literals:
  cut line / multiorder   "{}"  "[0+,1-]"  "(-inf,2]"  "{3}"  "[0,1]×{-inf}"  "A ∪ B"
                          points: rationals p/q, "-inf", "+inf"; suffix "-"/"+" for the
                          one-sided types just below/above a rational
  cyclic                  as the cut line, positions in [0,1)
  compactification        "{iso:0,limit}"  "X∖{iso:1}"  "X"
  cylinder                "[01]" (all sequences starting 01)  "[0]∖{0(0)}"  "{01(1)}"
  finite systems          "{a,b}"
maps: catalog names (see `rank --all`), or group elements "plauto:x:y;...[|l|r]"
(comma separated per axis on multiorder) and "perm:(0 1)(2 5)".
"""


class UsageError(Exception):
    pass


def _emit(report: dict, fmt: str):
    if fmt == "json":
        print(dumps(report))
    else:
        print("\n".join(text_lines(report)))


def cmd_rank(args) -> tuple[int, dict]:
    S = build_system(args.system)
    t0 = time.perf_counter()
    if args.all:
        level = args.level or DEFAULT_LEVEL
        entries = {}
        values = []
        for name, f in S.maps.items():
            mr = beta_of_map(f, level, args.cap)
            entries[name] = {"rank": mr.value.to_json(), "stabilized": mr.stabilized,
                             "per_level": [v.to_json() for v in mr.per_level],
                             "claimed_in_ellis": f.claimed_in_ellis}
            if name in S.expected:
                entries[name]["expected"] = S.expected[name][0].to_json()
            if f.claimed_in_ellis:
                values.append(mr.value)
        value = rank_sup(values)
        rep = run_report("rank", system=S.spec, max_level=level, cap=args.cap, maps=entries,
                         rank=value.to_json(), expected=S.system_expected[0].to_json())
    elif args.map is None:
        raise UsageError("rank needs --map NAME or --all")
    else:
        f = resolve_map(S, args.map)
        if args.max_level is not None:
            mr = beta_of_map(f, args.max_level, args.cap)
            value = mr.value
            rep = run_report("rank", system=S.spec, map=f.name, max_level=args.max_level, cap=args.cap,
                             rank=value.to_json(), stabilized=mr.stabilized,
                             per_level=[v.to_json() for v in mr.per_level],
                             bound="closed-form" if f.name in S.expected else "lower-bound")
        else:
            level = args.level or DEFAULT_LEVEL
            P = canonical_partition(S.space, level)
            chain = iterate_derivative(S.space.full(), f, P, args.cap)
            value = chain.rank(args.cap)
            rep = run_report("rank", system=S.spec, map=f.name, level=level, cap=args.cap,
                             rank=value.to_json(), chain=chain_json(chain),
                             witnesses=[w.to_json() for w in chain.witnesses])
    if args.timings:
        rep["timings"] = {"total_s": time.perf_counter() - t0}
    return (3 if value.is_capped else 0), rep


def cmd_derive(args) -> tuple[int, dict]:
    S = build_system(args.system)
    f = resolve_map(S, args.map)
    level = args.level or DEFAULT_LEVEL
    P = canonical_partition(S.space, level)
    Y = S.space.full() if args.set is None else parse_set(S.space, args.set)
    if not Y.is_closed():
        raise UsageError(f"starting set {args.set!r} is not closed")
    t0 = time.perf_counter()
    chain = iterate_derivative(Y, f, P, args.cap)
    value = chain.rank(args.cap)
    rep = run_report("derive", system=S.spec, map=f.name, level=level, cap=args.cap,
                     start=Y.literal(), chain=chain_json(chain, steps=args.steps),
                     witnesses=[w.to_json() for w in chain.witnesses], rank=value.to_json())
    if args.timings:
        rep["timings"] = {"total_s": time.perf_counter() - t0}
    return (3 if value.is_capped else 0), rep


def cmd_check(args) -> tuple[int, dict]:
    t0 = time.perf_counter()
    results = run_laws([args.law] if args.law != "all" else "all", args.grid)
    ok = all(r.ok for r in results)
    rep = run_report("check", grid=args.grid, laws=[r.to_json() for r in results], ok=ok)
    if args.timings:
        rep["timings"] = {"total_s": time.perf_counter() - t0}
    return (0 if ok else 1), rep


def cmd_factor(args) -> tuple[int, dict]:
    F = parse_factor(args.factor)
    if F.name == "shift-down":
        _, f, theta = shift_down_example()
        if args.map not in (None, f.name):
            raise UsageError(f"the shift-down factor comes with the map {f.name!r} only")
    else:
        S = build_system(args.system or F.source.spec)
        if S.space != F.source:
            raise UsageError(f"factor {args.factor} does not start at {S.spec}")
        if args.map is None:
            raise UsageError("factor needs --map NAME")
        f, theta = resolve_map(S, args.map), None
    level = args.level or DEFAULT_LEVEL
    P = trivial_partition(POINT) if F.target is POINT else canonical_partition(F.target, level)
    rep = check_factor_lemmas(F, f, F.target.full(), P, args.alpha, args.cap, theta=theta)
    body = rep.to_json()
    body.pop("factor")
    body.pop("map")
    out = run_report("factor", factor=F.name, map=f.name, level=level, **body)
    return (0 if rep.ok else 1), out


def cmd_witness(args) -> tuple[int, dict]:
    S = build_system(args.system)
    f = resolve_map(S, args.map)
    P = canonical_partition(S.space, args.level or DEFAULT_LEVEL)
    x = parse_point(S.space, args.point)
    rep = witness_search(f, P, x, height=args.height, depth=args.depth)
    return 0, run_report("witness", system=S.spec, map=f.name, level=args.level or DEFAULT_LEVEL,
                         **rep.to_json())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oscrank", description="Exact oscillation ranks on symbolic Stone spaces.",
                                epilog=SET_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_map=True):
        sp.add_argument("--system", required=need_map, help="acf | dlo | cyclic | multiorder:<n> | cylinder | "
                                                            "finite:<path or bundled name>")
        sp.add_argument("--level", type=int, default=None, help=f"canonical partition level (default {DEFAULT_LEVEL})")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help=f"derivative iteration cap (default {DEFAULT_CAP})")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    r = sub.add_parser("rank", help="β(f,P), β(f) or β(X,G)", epilog=SET_GRAMMAR,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    common(r)
    g = r.add_mutually_exclusive_group()
    g.add_argument("--map")
    g.add_argument("--all", action="store_true", help="sup over the catalog's Ellis elements")
    r.add_argument("--max-level", type=int, default=None, help="β(f): sup over levels 1..N")
    r.set_defaults(fn=cmd_rank)

    d = sub.add_parser("derive", help="print the derivative chain", epilog=SET_GRAMMAR,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    common(d)
    d.add_argument("--map", required=True)
    d.add_argument("--set", default=None, help="closed starting set (symbolic literal; default the whole space)")
    d.add_argument("--steps", action="store_true", help="per-stage detail")
    d.set_defaults(fn=cmd_derive)

    c = sub.add_parser("check", help="run a law suite over the catalog grid")
    c.add_argument("--law", choices=list(LAWS) + ["all"], required=True)
    c.add_argument("--grid", choices=list(GRIDS), default="small")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.add_argument("--timings", action="store_true")
    c.set_defaults(fn=cmd_check)

    f = sub.add_parser("factor", help="check the factor-map stage inclusions and rank comparison")
    common(f, need_map=False)
    f.add_argument("--factor", required=True, help='"proj:<n>:<k>", "singleton:<space>" or "shift-down"')
    f.add_argument("--map")
    f.add_argument("--alpha", type=int, default=3)
    f.set_defaults(fn=cmd_factor)

    w = sub.add_parser("witness", help="definition-level witness search at a point")
    common(w)
    w.add_argument("--map", required=True)
    w.add_argument("--point", required=True)
    w.add_argument("--height", type=int, default=4)
    w.add_argument("--depth", type=int, default=3)
    w.set_defaults(fn=cmd_witness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "level", None) is not None and args.level < 1:
        parser.error("--level must be at least 1")
    if getattr(args, "cap", 1) < 1:
        parser.error("--cap must be at least 1")
    try:
        code, report = args.fn(args)
    except (CatalogError, LiteralError, MapError, FactorError, EngineError, UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"oscrank: error: {msg}", file=sys.stderr)
        return 2
    _emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Machine-readable run reports.

Serialization is canonical: sorted keys, compact separators, rationals as
"p/q" inside set literals, ranks as {"finite": n} | "infinite" | {"capped": n}.
Timings are left out unless asked for, so two runs of the same command
produce identical bytes.
"""

from __future__ import annotations

import json

from . import __version__
from .space import point_text


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def chain_json(chain, steps: bool = False) -> dict:
    out = {"stages": [S.literal() for S in chain.stages], "termination": chain.termination}
    if steps:
        out["steps"] = [
            {"index": i, "set": S.literal(), "empty": S.is_empty(),
             "witness": None if S.is_empty() else point_text(S.witness())}
            for i, S in enumerate(chain.stages)
        ]
    return out


def run_report(command: str, **fields) -> dict:
    out = {"command": command, "version": __version__}
    out.update({k: v for k, v in fields.items() if v is not None})
    return out


def text_lines(report: dict) -> list[str]:
    """Human-readable rendering of a report (one fact per line)."""
    cmd = report["command"]
    lines = []
    if cmd == "rank":
        head = f"{report['system']}"
        if "map" in report:
            head += f" {report['map']}"
        if "level" in report:
            head += f" level {report['level']}"
        lines.append(f"{head}: rank {_rank_text(report['rank'])}")
        if "stabilized" in report:
            lines.append(f"stabilized: {str(report['stabilized']).lower()}")
        for name, entry in report.get("maps", {}).items():
            lines.append(f"  {name}: {_rank_text(entry['rank'])}"
                         + ("" if entry.get("claimed_in_ellis", True) else " (not an Ellis element)"))
        if "chain" in report:
            lines.extend(_chain_lines(report["chain"]))
    elif cmd == "derive":
        lines.append(f"{report['system']} {report['map']} level {report['level']}")
        lines.extend(_chain_lines(report["chain"]))
        lines.append(f"rank {_rank_text(report['rank'])}")
    elif cmd == "check":
        for law in report["laws"]:
            lines.append(f"{law['law']}: {'pass' if law['ok'] else 'FAIL'} ({law['cases']} cases)")
            lines.extend(f"  {msg}" for msg in law["failures"])
    elif cmd == "factor":
        lines.append(f"{report['factor']} {report['map']} level {report['level']}")
        for st in report["stages"]:
            rel = "=" if st["equal"] else ("⊊" if st["included"] else "⊄")
            lines.append(f"  α={st['alpha']}: {st['lhs']} {rel} {st['rhs']}")
        lines.append(f"β source {_rank_text(report['beta_source'])}, β target {_rank_text(report['beta_target'])}")
    elif cmd == "witness":
        for lv in report["levels"]:
            extra = f" {lv['v1']} / {lv['v2']} in {lv['atom']}" if lv["verdict"] == "Witnessed" else ""
            lines.append(f"level {lv['level']}: {lv['verdict']}{extra}")
    else:
        lines.append(dumps(report))
    if "timings" in report:
        lines.append(f"time: {report['timings']['total_s']:.3f}s")
    return lines


def _rank_text(r) -> str:
    if r == "infinite":
        return "Infinite"
    if "finite" in r:
        return f"Finite({r['finite']})"
    return f"Capped({r['capped']})"


def _chain_lines(chain) -> list[str]:
    lines = [f"  stage {i}: {s}" for i, s in enumerate(chain["stages"])]
    lines.append(f"  termination: {chain['termination']}")
    return lines

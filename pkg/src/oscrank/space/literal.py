"""Tiny textual grammar for points and sets.

Grid spaces (cut line, products, circle)::

    set    := "{}" | box (" ∪ " box)*
    box    := ival ("×" ival)*
    ival   := ("[" | "(") point "," point ("]" | ")") | "{" point "}"
    point  := "-inf" | "+inf" | rational ["-" | "+"]

Compactification: ``{iso:0,iso:3,limit}`` or ``X∖{iso:0}`` (cofinite; Limit
included unless listed). Cylinder: cells ``[01]`` (cylinder of a word, ``[]``
is everything), optionally ``[01]∖{010(1)}``, and points ``{01(0)}``.
Finite spaces: ``{a,b}``.
"""

from __future__ import annotations

import re

from ..rational import parse_rational
from .points import MINUS, PLUS, RAT, CylinderPoint, Iso, Limit

UNION = "∪"
TIMES = "×"
MINUS_SET = "∖"


class LiteralError(ValueError):
    pass


def parse_line_point(line, text: str):
    t = text.strip()
    if t == "-inf" or t == "+inf":
        if line.name != "cutline":
            raise LiteralError(f"{t} is not a point of the {line.name} space")
        return line.min if t == "-inf" else line.max
    tag = RAT
    if len(t) > 1 and t[-1] in "+-":
        tag = PLUS if t[-1] == "+" else MINUS
        t = t[:-1]
    try:
        q = parse_rational(t)
    except ValueError as e:
        raise LiteralError(str(e)) from None
    if line.name == "cyclic" and not (0 <= q < 1):
        raise LiteralError(f"cyclic points need a representative in [0,1), got {text!r}")
    p = line.make(tag, q)
    if p is None:
        raise LiteralError(f"bad point {text!r}")
    return p


def _split_top(text: str, sep: str) -> list[str]:
    parts = [p.strip() for p in text.split(sep)]
    if any(not p for p in parts):
        raise LiteralError(f"empty component in {text!r}")
    return parts


_IVAL = re.compile(r"^([\[\(])([^,]+),([^,]+)([\]\)])$")
_POINT = re.compile(r"^\{([^,{}]+)\}$")


def _parse_interval(line, text: str):
    text = text.strip()
    m = _POINT.match(text)
    if m:
        p = parse_line_point(line, m.group(1))
        return (p, True, p, True)
    m = _IVAL.match(text)
    if not m:
        raise LiteralError(f"bad interval {text!r}")
    lo = parse_line_point(line, m.group(2))
    hi = parse_line_point(line, m.group(3))
    if hi.key < lo.key:
        raise LiteralError(f"interval endpoints out of order in {text!r}")
    return (lo, m.group(1) == "[", hi, m.group(4) == "]")


def parse_grid_set(space, text: str):
    text = text.strip()
    if text == "{}":
        return space.empty()
    boxes = []
    for part in _split_top(text, UNION):
        ivals = _split_top(part, TIMES)
        if len(ivals) != space.dim:
            raise LiteralError(f"box {part!r} has {len(ivals)} factors, space has {space.dim}")
        boxes.append(tuple(_parse_interval(l, iv) for l, iv in zip(space.lines, ivals)))
    return space.boxes(boxes)


def parse_grid_point(space, text: str):
    text = text.strip()
    if space.tuple_points:
        if not (text.startswith("(") and text.endswith(")")):
            raise LiteralError(f"product point must be parenthesized: {text!r}")
        parts = _split_top(text[1:-1], ",")
        if len(parts) != space.dim:
            raise LiteralError(f"point {text!r} has wrong arity")
        return space.from_coords(tuple(parse_line_point(l, p) for l, p in zip(space.lines, parts)))
    return parse_line_point(space.lines[0], text)


def _braced_items(text: str) -> list[str]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise LiteralError(f"expected a braced list, got {text!r}")
    inner = text[1:-1].strip()
    return [] if not inner else _split_top(inner, ",")


def parse_compact_point(text: str):
    t = text.strip()
    if t == "limit":
        return Limit
    m = re.match(r"^iso:(\d+)$", t)
    if not m:
        raise LiteralError(f"bad compactification point {text!r}")
    return Iso(int(m.group(1)))


def parse_compact_set(space, text: str):
    text = text.strip()
    if text.startswith("X" + MINUS_SET):
        pts = [parse_compact_point(p) for p in _braced_items(text[2:])]
        return space.finite_set(pts).complement()
    if text == "X":
        return space.full()
    return space.finite_set([parse_compact_point(p) for p in _braced_items(text)])


def parse_cylinder_point(text: str):
    m = re.match(r"^([01]*)\(([01])\)$", text.strip())
    if not m:
        raise LiteralError(f"bad cylinder point {text!r}")
    return CylinderPoint(m.group(1), int(m.group(2)))


def parse_cylinder_set(space, text: str):
    text = text.strip()
    if text == "{}":
        return space.empty()
    out = space.empty()
    for part in _split_top(text, UNION):
        if part.startswith("{"):
            out = out | space.finite_set([parse_cylinder_point(p) for p in _braced_items(part)])
            continue
        removed = []
        if MINUS_SET in part:
            part, rest = part.split(MINUS_SET, 1)
            removed = [parse_cylinder_point(p) for p in _braced_items(rest)]
        m = re.match(r"^\[([01]*)\]$", part.strip())
        if not m:
            raise LiteralError(f"bad cylinder cell {part!r}")
        out = out | (space.cylinder(m.group(1)) - space.finite_set(removed))
    return out


def parse_finite_set(space, text: str):
    items = _braced_items(text)
    for p in items:
        if p not in space.points:
            raise LiteralError(f"unknown point {p!r}")
    return space.finite_set(items)

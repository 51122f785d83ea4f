"""Small helpers around :class:`fractions.Fraction`.

Rationals are serialized as ``"p/q"`` strings (``"3"`` is accepted on input,
``"3/1"`` is never produced; integers print bare).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def Q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "/" in text:
        num, den = text.split("/", 1)
        if not den.strip().isdigit() or int(den) == 0:
            raise ValueError(f"bad rational {text!r}")
        return Fraction(int(num), int(den))
    try:
        return Fraction(int(text))
    except ValueError:
        raise ValueError(f"bad rational {text!r}") from None


def fmt(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def height(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)


@lru_cache(maxsize=None)
def rationals_up_to(h: int) -> tuple[Fraction, ...]:
    """Sorted rationals p/q with |p| <= h and 1 <= q <= h."""
    out = set()
    for q in range(1, h + 1):
        for p in range(-h, h + 1):
            out.add(Fraction(p, q))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def unit_rationals_up_to(h: int) -> tuple[Fraction, ...]:
    """Rationals of height <= h in [0, 1)."""
    return tuple(q for q in rationals_up_to(h) if 0 <= q < 1)


def _contains(x, lo, lo_closed, hi, hi_closed) -> bool:
    if lo is not None and (x < lo or (x == lo and not lo_closed)):
        return False
    if hi is not None and (x > hi or (x == hi and not hi_closed)):
        return False
    return True


def simplest_between(lo: Fraction | None, hi: Fraction | None,
                     lo_closed: bool = False, hi_closed: bool = False) -> Fraction | None:
    """Rational of least denominator (then least |numerator|) in the interval.

    ``None`` bounds are infinite. Returns ``None`` for an empty interval.
    """
    if lo is not None and hi is not None:
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            return None
        if lo == hi:
            return lo
    # integer candidates first
    if _contains(Fraction(0), lo, lo_closed, hi, hi_closed):
        return Fraction(0)
    if lo is not None and lo >= 0:
        n = math.floor(lo)
        cand = n if (n == lo and lo_closed) else n + 1
        if _contains(Fraction(cand), lo, lo_closed, hi, hi_closed):
            return Fraction(cand)
        return n + _simplest_unit(lo - n, hi - n, lo_closed, hi_closed)
    # 0 is excluded and lo < 0, so the interval lies at or below 0
    assert hi is not None and hi <= 0
    neg = simplest_between(-hi, None if lo is None else -lo, hi_closed, lo_closed)
    return None if neg is None else -neg


def _simplest_unit(lo, hi, lo_closed, hi_closed) -> Fraction:
    # interval inside [0, 1] containing no integer (except maybe excluded ends)
    if lo == 0:
        # (0, hi): 1/n with n minimal such that 1/n inside
        n = math.floor(1 / hi)
        while not _contains(Fraction(1, n if n > 0 else 1), lo, lo_closed, hi, hi_closed):
            n += 1
        return Fraction(1, n)
    # x = 1/y with y in (1/hi, 1/lo)
    y = simplest_between(1 / hi, 1 / lo, hi_closed, lo_closed)
    return 1 / y

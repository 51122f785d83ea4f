"""Named points of the shipped Stone spaces.

Every point is an immutable, hashable value with a deterministic sort key.
Irrational cuts are points of the spaces but never named here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..rational import Q, fmt, height as q_height

# tags along a line: -2 and 2 are the ends of the cut line
MINF, MINUS, RAT, PLUS, PINF = -2, -1, 0, 1, 2
_SUFFIX = {MINUS: "-", RAT: "", PLUS: "+"}
_NAME = {MINUS: "Minus", RAT: "Rat", PLUS: "Plus"}


@dataclass(frozen=True)
class CutPoint:
    """A 1-type over (Q, <): -inf, q-, q, q+ or +inf."""

    tag: int
    q: Fraction | None = None

    def __post_init__(self):
        if self.tag in (MINF, PINF):
            if self.q is not None:
                raise ValueError("infinite cut carries no rational")
        elif self.tag in (MINUS, RAT, PLUS):
            object.__setattr__(self, "q", Q(self.q))
        else:
            raise ValueError(f"bad tag {self.tag}")

    @property
    def pos(self) -> Fraction | None:
        return self.q

    @property
    def key(self):
        if self.tag == MINF:
            return (0, 0, 0)
        if self.tag == PINF:
            return (2, 0, 0)
        return (1, self.q, self.tag)

    def __lt__(self, other: CutPoint) -> bool:
        return self.key < other.key

    def __le__(self, other: CutPoint) -> bool:
        return self.key <= other.key

    @property
    def height(self) -> int:
        return 1 if self.q is None else q_height(self.q)

    @property
    def is_rational(self) -> bool:
        return self.tag == RAT

    def text(self) -> str:
        if self.tag == MINF:
            return "-inf"
        if self.tag == PINF:
            return "+inf"
        return fmt(self.q) + _SUFFIX[self.tag]

    def __repr__(self) -> str:
        if self.tag == MINF:
            return "MinusInf"
        if self.tag == PINF:
            return "PlusInf"
        return f"{_NAME[self.tag]}({fmt(self.q)})"


MinusInf = CutPoint(MINF)
PlusInf = CutPoint(PINF)


def Minus(q) -> CutPoint:
    return CutPoint(MINUS, Q(q))


def Rat(q) -> CutPoint:
    return CutPoint(RAT, Q(q))


def Plus(q) -> CutPoint:
    return CutPoint(PLUS, Q(q))


@dataclass(frozen=True)
class CyclicPoint:
    """A 1-type over the dense cyclic order on [0, 1) ∩ Q.

    The circle is linearized at the isolated point Rat(0): Rat(0) is least
    and Minus(0) (the cut just below 0, i.e. at position 1) is greatest.
    """

    tag: int
    q: Fraction

    def __post_init__(self):
        if self.tag not in (MINUS, RAT, PLUS):
            raise ValueError(f"bad cyclic tag {self.tag}")
        q = Q(self.q)
        q = q - (q.numerator // q.denominator)
        object.__setattr__(self, "q", q)

    @property
    def pos(self) -> Fraction:
        if self.tag == MINUS and self.q == 0:
            return Fraction(1)
        return self.q

    @property
    def key(self):
        return (self.pos, self.tag)

    def __lt__(self, other: CyclicPoint) -> bool:
        return self.key < other.key

    def __le__(self, other: CyclicPoint) -> bool:
        return self.key <= other.key

    @property
    def height(self) -> int:
        return q_height(self.q)

    @property
    def is_rational(self) -> bool:
        return self.tag == RAT

    def text(self) -> str:
        return fmt(self.q) + _SUFFIX[self.tag]

    def __repr__(self) -> str:
        return f"C{_NAME[self.tag]}({fmt(self.q)})"


def CMinus(q) -> CyclicPoint:
    return CyclicPoint(MINUS, q)


def CRat(q) -> CyclicPoint:
    return CyclicPoint(RAT, q)


def CPlus(q) -> CyclicPoint:
    return CyclicPoint(PLUS, q)


@dataclass(frozen=True)
class ProductPoint:
    coords: tuple[CutPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    @property
    def key(self):
        return tuple(c.key for c in self.coords)

    def __lt__(self, other: ProductPoint) -> bool:
        return self.key < other.key

    @property
    def height(self) -> int:
        return sum(c.height for c in self.coords)

    def text(self) -> str:
        return "(" + ", ".join(c.text() for c in self.coords) + ")"

    def __repr__(self) -> str:
        return "(" + ", ".join(repr(c) for c in self.coords) + ")"


def P(*coords) -> ProductPoint:
    return ProductPoint(tuple(coords))


@dataclass(frozen=True)
class CompactPoint:
    """Point of the one-point compactification of N: Iso(k) or Limit."""

    k: int | None = None

    def __post_init__(self):
        if self.k is not None and (not isinstance(self.k, int) or self.k < 0):
            raise ValueError(f"bad isolated index {self.k!r}")

    @property
    def key(self):
        return (1, 0) if self.k is None else (0, self.k)

    def __lt__(self, other: CompactPoint) -> bool:
        return self.key < other.key

    @property
    def height(self) -> int:
        return 1 if self.k is None else self.k + 1

    @property
    def is_limit(self) -> bool:
        return self.k is None

    def text(self) -> str:
        return "limit" if self.k is None else f"iso:{self.k}"

    def __repr__(self) -> str:
        return "Limit" if self.k is None else f"Iso({self.k})"


def Iso(k: int) -> CompactPoint:
    return CompactPoint(k)


Limit = CompactPoint(None)


@dataclass(frozen=True)
class CylinderPoint:
    """Eventually constant point of {0,1}^N: ``word`` then ``tail`` forever."""

    word: str
    tail: int

    def __post_init__(self):
        if self.tail not in (0, 1) or set(self.word) - {"0", "1"}:
            raise ValueError(f"bad cylinder point {self.word!r}/{self.tail!r}")
        object.__setattr__(self, "word", self.word.rstrip(str(self.tail)))

    def bit(self, i: int) -> int:
        return int(self.word[i]) if i < len(self.word) else self.tail

    def prefix(self, n: int) -> str:
        return "".join(str(self.bit(i)) for i in range(n))

    @property
    def key(self):
        # lexicographic order on the sequence (words up to 64 bits)
        return (self.word.ljust(64, str(self.tail)), self.tail, len(self.word))

    def __lt__(self, other: CylinderPoint) -> bool:
        return self.key < other.key

    @property
    def height(self) -> int:
        return len(self.word) + 1

    def text(self) -> str:
        return f"{self.word}({self.tail})"

    def __repr__(self) -> str:
        return f"Cyl({self.word!r},{self.tail})"


def point_sort_key(p):
    """Sort key usable across every named point family (and finite names)."""
    if isinstance(p, str):
        return (p,)
    return p.key

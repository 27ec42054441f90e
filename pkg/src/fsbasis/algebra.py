"""Root data for B2 and sl2, the colour set of g_1 and the ordered part alphabet.

Weights of B2 are kept in the orthonormal basis e1, e2 with *doubled*
integer coordinates, so the spinor weights (1/2)(e1 +- e2) stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple


@dataclass(frozen=True, order=True)
class FiniteWeight:
    """A B2 weight ``e1*eps1 + e2*eps2`` stored as ``(2*e1, 2*e2)``."""

    d1: int
    d2: int

    @classmethod
    def from_eps(cls, e1, e2) -> "FiniteWeight":
        e1, e2 = Fraction(e1), Fraction(e2)
        if (2 * e1).denominator != 1 or (2 * e2).denominator != 1:
            raise ValueError(f"coordinates must be half-integers, got {e1}, {e2}")
        return cls(int(2 * e1), int(2 * e2))

    @property
    def e1(self) -> Fraction:
        return Fraction(self.d1, 2)

    @property
    def e2(self) -> Fraction:
        return Fraction(self.d2, 2)

    @property
    def doubled(self) -> Tuple[int, int]:
        return (self.d1, self.d2)

    def is_integral(self) -> bool:
        """True for weights of the B2 weight lattice (equal parity)."""
        return (self.d1 - self.d2) % 2 == 0

    def dot(self, other: "FiniteWeight") -> Fraction:
        # normalised form: <theta, theta> = 2, i.e. eps_i orthonormal
        return Fraction(self.d1 * other.d1 + self.d2 * other.d2, 4)

    def __add__(self, other: "FiniteWeight") -> "FiniteWeight":
        return FiniteWeight(self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other: "FiniteWeight") -> "FiniteWeight":
        return FiniteWeight(self.d1 - other.d1, self.d2 - other.d2)

    def __neg__(self) -> "FiniteWeight":
        return FiniteWeight(-self.d1, -self.d2)

    def __mul__(self, n: int) -> "FiniteWeight":
        return FiniteWeight(n * self.d1, n * self.d2)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"({self.e1}, {self.e2})"


ZERO_WEIGHT = FiniteWeight(0, 0)
EPS1 = FiniteWeight(2, 0)
EPS2 = FiniteWeight(0, 2)
THETA = EPS1 + EPS2
ALPHA1 = EPS1 - EPS2  # long simple root
ALPHA2 = EPS2  # short simple root
OMEGA1 = EPS1
OMEGA2 = FiniteWeight(1, 1)
# the cominimal coweight used by the simple current [omega]
OMEGA = OMEGA1

B2_ROOTS = tuple(
    sorted(
        {s * r for r in (ALPHA1, THETA, EPS1, EPS2) for s in (1, -1)}
    )
)


def b2_weyl_orbit(mu: FiniteWeight) -> set:
    """Orbit of ``mu`` under the signed permutations of (e1, e2)."""
    out = set()
    for a, b in ((mu.d1, mu.d2), (mu.d2, mu.d1)):
        for sa in (1, -1):
            for sb in (1, -1):
                out.add(FiniteWeight(sa * a, sb * b))
    return out


class Color(IntEnum):
    """Roots spanning g_1, in the order 2bar < 0 < 2 used within one degree."""

    TWOBAR = 0
    ZERO = 1
    TWO = 2

    @property
    def label(self) -> str:
        return ("2b", "0", "2")[self]


_COLOR_WEIGHTS = {
    Color.TWOBAR: EPS1 - EPS2,
    Color.ZERO: EPS1,
    Color.TWO: EPS1 + EPS2,
}

GAMMA = tuple(Color)


def color_weight(c: Color) -> FiniteWeight:
    return _COLOR_WEIGHTS[Color(c)]


def lower(c: Color) -> Optional[Color]:
    """Action of x_{-eps2} on g_1 with all coefficients normalised to 1."""
    c = Color(c)
    if c == Color.TWOBAR:
        return None
    return Color(c - 1)


class Part(NamedTuple):
    """The element ``x_color(-depth)`` of g~_1."""

    color: Color
    depth: int

    @property
    def rank(self) -> int:
        """Integer key realising the linear order on parts (bigger = bigger)."""
        return part_rank(self.color, self.depth)

    def __lt__(self, other):  # type: ignore[override]
        return self.rank < other.rank

    def __le__(self, other):  # type: ignore[override]
        return self.rank <= other.rank

    def __gt__(self, other):  # type: ignore[override]
        return self.rank > other.rank

    def __ge__(self, other):  # type: ignore[override]
        return self.rank >= other.rank


def part_rank(color: int, depth: int) -> int:
    # ... < x_2(-j-1) < x_2bar(-j) < x_0(-j) < x_2(-j) < x_2bar(-j+1) < ...
    return int(color) - 3 * depth


def part_from_rank(rank: int) -> Part:
    depth, color = divmod(-rank, 3)
    if color:
        depth += 1
        color = 3 - color
    return Part(Color(color), depth)


class Sl2Symbol(Enum):
    E = "e"
    H = "h"
    F = "f"


def sl2_lower(s: Sl2Symbol) -> Optional[Tuple[int, Sl2Symbol]]:
    """ad f on the standard basis, with [e, f] = h, [h, e] = 2e, [h, f] = -2f."""
    if s == Sl2Symbol.E:
        return (-1, Sl2Symbol.H)
    if s == Sl2Symbol.H:
        return (2, Sl2Symbol.F)
    return None


def sl2_raise(s: Sl2Symbol) -> Optional[Tuple[int, Sl2Symbol]]:
    """ad e on the standard basis."""
    if s == Sl2Symbol.F:
        return (1, Sl2Symbol.H)
    if s == Sl2Symbol.H:
        return (-2, Sl2Symbol.E)
    return None


SL2_WEIGHT = {Sl2Symbol.E: 2, Sl2Symbol.H: 0, Sl2Symbol.F: -2}

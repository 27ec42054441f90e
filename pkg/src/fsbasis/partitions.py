"""Coloured partitions, difference/initial conditions and admissible monomials.

A coloured partition ``pi`` assigns to each depth ``j >= 1`` a triple
``(c_j, b_j, a_j)``: the exponents of ``x_2bar(-j)``, ``x_0(-j)`` and
``x_2(-j)`` in the monomial ``x(pi)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .algebra import EPS1, OMEGA, OMEGA1, OMEGA2, ZERO_WEIGHT, Color, FiniteWeight, color_weight
from .counts import WeightedCount

Triple = Tuple[int, int, int]
ZERO_TRIPLE: Triple = (0, 0, 0)


@dataclass(frozen=True)
class DominantWeight:
    """``k0*Lambda0 + k1*Lambda1 + k2*Lambda2`` for B2^(1)."""

    k0: int
    k1: int = 0
    k2: int = 0

    def __post_init__(self):
        if min(self.k0, self.k1, self.k2) < 0:
            raise ValueError("dominant weights have nonnegative labels")

    @property
    def level(self) -> int:
        return self.k0 + self.k1 + self.k2

    @property
    def labels(self) -> Tuple[int, int, int]:
        return (self.k0, self.k1, self.k2)

    @property
    def finite_part(self) -> FiniteWeight:
        return self.k1 * OMEGA1 + self.k2 * OMEGA2

    def star(self) -> "DominantWeight":
        """Target of the simple current: swaps k0 and k1."""
        return DominantWeight(self.k1, self.k0, self.k2)

    @classmethod
    def parse(cls, text: str) -> "DominantWeight":
        parts = [int(x) for x in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected k0,k1,k2, got {text!r}")
        return cls(*parts)

    def __str__(self) -> str:
        return f"({self.k0},{self.k1},{self.k2})"


def dominant_weights(level: int) -> List[DominantWeight]:
    return [
        DominantWeight(k0, k1, level - k0 - k1)
        for k0 in range(level, -1, -1)
        for k1 in range(level - k0, -1, -1)
    ]


def _normalize(triples: Sequence[Sequence[int]]) -> Tuple[Triple, ...]:
    out = [tuple(int(x) for x in t) for t in triples]
    for t in out:
        if len(t) != 3 or min(t) < 0:
            raise ValueError(f"bad exponent triple {t}")
    while out and out[-1] == ZERO_TRIPLE:
        out.pop()
    return tuple(out)  # type: ignore[return-value]


@dataclass(frozen=True)
class ColoredPartition:
    """Exponent table; ``exps[j-1]`` is the triple ``(c_j, b_j, a_j)``."""

    exps: Tuple[Triple, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "exps", _normalize(self.exps))

    @classmethod
    def from_dict(cls, exponents: Mapping[int, Sequence[int]]) -> "ColoredPartition":
        exponents = {int(j): t for j, t in exponents.items()}
        if any(j < 1 for j in exponents):
            raise ValueError("depths of a coloured partition start at 1")
        top = max(exponents, default=0)
        return cls(tuple(tuple(exponents.get(j, ZERO_TRIPLE)) for j in range(1, top + 1)))

    @classmethod
    def from_parts(cls, parts) -> "ColoredPartition":
        table: Dict[int, List[int]] = {}
        for color, depth in parts:
            table.setdefault(depth, [0, 0, 0])[int(color)] += 1
        return cls.from_dict(table)

    def triple(self, j: int) -> Triple:
        if 1 <= j <= len(self.exps):
            return self.exps[j - 1]
        return ZERO_TRIPLE

    @property
    def max_depth(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        return sum(j * sum(t) for j, t in enumerate(self.exps, start=1))

    @property
    def part_count(self) -> int:
        return sum(sum(t) for t in self.exps)

    def parts(self) -> List[Tuple[Color, int]]:
        """Parts in increasing order, each repeated by its multiplicity."""
        out = []
        for j in range(self.max_depth, 0, -1):
            for color in Color:
                out.extend([(color, j)] * self.exps[j - 1][color])
        return out

    def sort_key(self) -> Tuple[int, ...]:
        return tuple(x for t in self.exps for x in t)

    def to_dict(self) -> dict:
        return {
            "exponents": {
                str(j): list(t) for j, t in enumerate(self.exps, start=1) if t != ZERO_TRIPLE
            }
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ColoredPartition":
        return cls.from_dict(json.loads(text)["exponents"])

    def __mul__(self, other: "ColoredPartition") -> "ColoredPartition":
        """Product of monomials ``x(self) x(other)``."""
        n = max(self.max_depth, other.max_depth)
        return ColoredPartition(
            tuple(
                tuple(x + y for x, y in zip(self.triple(j), other.triple(j)))
                for j in range(1, n + 1)
            )
        )

    def __str__(self) -> str:
        names = ("x2b", "x0", "x2")
        factors = [
            f"{names[c]}(-{j})" + (f"^{e}" if e > 1 else "")
            for j in range(self.max_depth, 0, -1)
            for c, e in enumerate(self.exps[j - 1])
            if e
        ]
        return "*".join(factors) or "1"


# --- difference and initial conditions ------------------------------------


def _dc_sums(upper: Triple, lower: Triple) -> Tuple[int, int, int, int]:
    """The four designated sums for depths (j+1, j) = (upper, lower)."""
    c1, b1, a1 = upper
    c0, b0, a0 = lower
    return (c1 + b1 + c0, b1 + a1 + c0, a1 + c0 + b0, a1 + b0 + a0)


def _dc_pair_ok(upper: Triple, lower: Triple, k: int) -> bool:
    return max(_dc_sums(upper, lower)) <= k


def satisfies_dc(pi: ColoredPartition, k: int) -> bool:
    return all(
        _dc_pair_ok(pi.triple(j + 1), pi.triple(j), k) for j in range(1, pi.max_depth + 1)
    )


def _ic_ok(t: Triple, lam: DominantWeight) -> bool:
    c, b, a = t
    return a <= lam.k0 and b + a <= lam.k0 + lam.k2 and c + b <= lam.k0 + lam.k2


def satisfies_ic(pi: ColoredPartition, lam: DominantWeight) -> bool:
    return _ic_ok(pi.triple(1), lam)


def is_admissible(pi: ColoredPartition, lam: DominantWeight) -> bool:
    return satisfies_dc(pi, lam.level) and satisfies_ic(pi, lam)


# colours taking part in each leading-term family, as (depth offset, colour)
_FAMILIES = (
    ((1, Color.TWOBAR), (1, Color.ZERO), (0, Color.TWOBAR)),
    ((1, Color.ZERO), (1, Color.TWO), (0, Color.TWOBAR)),
    ((1, Color.TWO), (0, Color.TWOBAR), (0, Color.ZERO)),
    ((1, Color.TWO), (0, Color.ZERO), (0, Color.TWO)),
)


@dataclass(frozen=True)
class LeadingTermFactor:
    family: int  # 1..4, in the order of the leading-term list
    j: int  # the factor lives at depths j+1 and j
    factor: ColoredPartition

    def __str__(self) -> str:
        return f"family {self.family} at j={self.j}: {self.factor}"


def find_leading_term_divisor(pi: ColoredPartition, k: int) -> Optional[LeadingTermFactor]:
    """A leading-term monomial of total exponent k+1 dividing x(pi), if any."""
    for j in range(1, pi.max_depth + 1):
        for fam, slots in enumerate(_FAMILIES, start=1):
            avail = [pi.triple(j + off)[color] for off, color in slots]
            if sum(avail) <= k:
                continue
            need = k + 1
            table: Dict[int, List[int]] = {}
            for (off, color), have in zip(slots, avail):
                take = min(have, need)
                need -= take
                if take:
                    table.setdefault(j + off, [0, 0, 0])[color] += take
            return LeadingTermFactor(fam, j, ColoredPartition.from_dict(table))
    return None


def divides(small: ColoredPartition, big: ColoredPartition) -> bool:
    return all(
        x <= y
        for j in range(1, small.max_depth + 1)
        for x, y in zip(small.triple(j), big.triple(j))
    )


# --- enumeration -----------------------------------------------------------


@lru_cache(maxsize=None)
def _triples(k: int) -> Tuple[Triple, ...]:
    # exponent triples that may sit at some depth with nothing above them
    return tuple(
        (c, b, a)
        for c in range(k + 1)
        for b in range(k + 1)
        for a in range(k + 1)
        if c + b <= k and b + a <= k
    )


def all_colored_partitions(n: int) -> Iterator[ColoredPartition]:
    """Every coloured partition of degree ``n`` (no conditions)."""

    def rec(j: int, remaining: int, acc: List[Triple]):
        if remaining == 0:
            yield ColoredPartition(tuple(acc))
            return
        if j > remaining:
            return
        for size in range(remaining // j + 1):
            for c in range(size + 1):
                for b in range(size - c + 1):
                    acc.append((c, b, size - c - b))
                    yield from rec(j + 1, remaining - j * size, acc)
                    acc.pop()

    yield from rec(1, n, [])


def enumerate_admissible(lam: DominantWeight, n: int) -> List[ColoredPartition]:
    """All pi of degree n with DC (level k) and IC (for lam), sorted."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    k = lam.level
    out: List[ColoredPartition] = []
    acc: List[Triple] = []

    def rec(j: int, prev: Optional[Triple], remaining: int):
        if remaining == 0:
            out.append(ColoredPartition(tuple(acc)))
            return
        if j > remaining:
            return
        for t in _triples(k):
            size = t[0] + t[1] + t[2]
            if j * size > remaining:
                continue
            if prev is None:
                if not _ic_ok(t, lam):
                    continue
            elif not _dc_pair_ok(t, prev, k):
                continue
            acc.append(t)
            rec(j + 1, t, remaining - j * size)
            acc.pop()

    rec(1, None, n)
    out.sort(key=ColoredPartition.sort_key)
    return out


def weight_degree(pi: ColoredPartition) -> Tuple[FiniteWeight, int]:
    """Finite weight and depth-sum of ``x(pi)`` relative to ``v_Lambda``."""
    w = ZERO_WEIGHT
    for t in pi.exps:
        for color, e in zip(Color, t):
            w = w + e * color_weight(color)
    return w, pi.degree


def admissible_counts(lam: DominantWeight, max_degree: int) -> WeightedCount:
    """Relative (weight, degree) counts of DC+IC monomials up to ``max_degree``."""
    table = WeightedCount()
    for n in range(max_degree + 1):
        for pi in enumerate_admissible(lam, n):
            w, d = weight_degree(pi)
            table.add(w.doubled, d)
    return table


def shift(pi: ColoredPartition, p: int) -> ColoredPartition:
    """``pi^{+p}``: every part ``x_g(-j)`` becomes ``x_g(-j+p)``."""
    if pi.max_depth == 0:
        return pi
    lowest = min(j for j, t in enumerate(pi.exps, start=1) if t != ZERO_TRIPLE)
    if lowest - p < 1:
        raise ValueError(f"shift by {p} moves x(-{lowest}) to depth {lowest - p} <= 0")
    return ColoredPartition.from_dict(
        {j - p: t for j, t in enumerate(pi.exps, start=1) if t != ZERO_TRIPLE}
    )


def kappa(lam: DominantWeight) -> ColoredPartition:
    """The monomial with ``[omega]^2 v_Lambda = C x(kappa) v_Lambda``."""
    return ColoredPartition.from_dict(
        {1: (lam.k0, lam.k2, lam.k0), 2: (lam.k1, lam.k2, lam.k1)}
    )


def tail_pattern(lam: DominantWeight) -> Dict[str, Triple]:
    """Period-2 exponent pattern of the semi-infinite tail."""
    return {"even": (lam.k1, lam.k2, lam.k1), "odd": (lam.k0, lam.k2, lam.k0)}


def tail_extend(pi: ColoredPartition, lam: DominantWeight) -> ColoredPartition:
    """``x(pi^{-2}) x(kappa_Lambda)``, the representative one step further out."""
    return shift(pi, -2) * kappa(lam)


def current_shifted_weight(
    mu: FiniteWeight, delta, n: int, k: int
) -> Tuple[FiniteWeight, Fraction]:
    """Weight and L(0)-eigenvalue of ``[omega]^n v`` for ``v`` of weight (mu, delta)."""
    delta = Fraction(delta)
    new_mu = mu + (n * k) * OMEGA
    new_delta = delta + n * mu.dot(OMEGA) + Fraction(n * n, 2) * k * OMEGA.dot(OMEGA)
    return new_mu, new_delta


@dataclass(frozen=True)
class SemiInfiniteMonomial:
    """``[omega]^{2m} x(base) v_Lambda`` with ``m <= 0``."""

    lam: DominantWeight
    base: ColoredPartition
    shift: int = 0

    def __post_init__(self):
        if self.shift > 0:
            raise ValueError("shift must be nonpositive")
        if not is_admissible(self.base, self.lam):
            raise ValueError(f"{self.base} does not satisfy DC+IC for {self.lam}")

    def weight_depth(self) -> Tuple[FiniteWeight, int]:
        """Absolute finite weight and depth below v_Lambda."""
        w, d = weight_degree(self.base)
        mu, delta = current_shifted_weight(
            self.lam.finite_part + w, d, 2 * self.shift, self.lam.level
        )
        return mu, int(delta)

    def extended(self) -> "SemiInfiniteMonomial":
        """Same vector one step further out: ``[omega]^{2(m-1)} x(pi^{-2}) x(kappa)``."""
        return SemiInfiniteMonomial(self.lam, tail_extend(self.base, self.lam), self.shift - 1)


class StabilizationError(RuntimeError):
    """Semi-infinite tables failed to stabilise within the probe bound."""

    def __init__(self, message: str, history: List[WeightedCount]):
        super().__init__(message)
        self.history = history


def semi_infinite_table(lam: DominantWeight, m: int, degree_cut: int) -> WeightedCount:
    """Cells of ``[omega]^{2m} x(pi) v_Lambda`` (pi DC+IC) with depth <= degree_cut.

    Weights are absolute finite weights; depth is measured from ``v_Lambda``.
    """
    if m > 0:
        raise ValueError("only nonpositive current shifts are probed")
    if degree_cut < 0:
        raise ValueError("degree_cut must be nonnegative")
    k = lam.level
    M = -m
    top = lam.finite_part
    two_m = 2 * M
    # depth = sum over parts (j - 2M) + const; const is an integer
    const = 2 * M * M * k - 2 * M * top.dot(EPS1)
    assert const.denominator == 1
    budget = degree_cut - int(const)
    triples = _triples(k)

    @lru_cache(maxsize=None)
    def lower_bound(j: int, prev: Optional[Triple]) -> int:
        if j > two_m:
            return 0
        best = None
        for t in triples:
            if prev is None:
                if not _ic_ok(t, lam):
                    continue
            elif not _dc_pair_ok(t, prev, k):
                continue
            v = (j - two_m) * sum(t) + lower_bound(j + 1, t)
            if best is None or v < best:
                best = v
        return best if best is not None else 0

    table = WeightedCount()
    acc: List[Triple] = []

    def record():
        pi = ColoredPartition(tuple(acc))
        w, d = weight_degree(pi)
        mu, delta = current_shifted_weight(top + w, d, 2 * m, k)
        depth = delta  # relative to the conformal weight of v_Lambda
        assert depth.denominator == 1 and 0 <= depth <= degree_cut, (pi, depth)
        table.add(mu.doubled, int(depth))

    def rec(j: int, prev: Optional[Triple], spent: int):
        if spent + lower_bound(j, prev) > budget:
            return
        if j > two_m and spent + (j - two_m) > budget:
            record()
            return
        for t in triples:
            if prev is None:
                if not _ic_ok(t, lam):
                    continue
            elif not _dc_pair_ok(t, prev, k):
                continue
            acc.append(t)
            rec(j + 1, t, spent + (j - two_m) * sum(t))
            acc.pop()

    rec(1, None, 0)
    return table


def semi_infinite_multiplicities(
    lam: DominantWeight, degree_cut: int, max_shift: Optional[int] = None
) -> WeightedCount:
    """Stabilised semi-infinite table: probe m = 0, -1, -2, ... until two agree."""
    if max_shift is None:
        max_shift = degree_cut + lam.level + 4
    history: List[WeightedCount] = []
    for M in range(max_shift + 1):
        history.append(semi_infinite_table(lam, -M, degree_cut))
        if len(history) >= 2 and history[-1] == history[-2]:
            return history[-1]
    raise StabilizationError(
        f"no stabilisation for {lam} below depth {degree_cut} with |m| <= {max_shift}",
        history,
    )


# --- sl2 monomial bases ----------------------------------------------------


@dataclass(frozen=True)
class Sl2Partition:
    """Exponents of ``f(-j)^c h(-j)^b e(-j)^a``; ``exps[j]`` for ``j >= 0``.

    Only ``c_0`` (the factor ``f(0)^{c_0}``) may be nonzero at depth 0.
    """

    exps: Tuple[Triple, ...] = ((0, 0, 0),)

    def __post_init__(self):
        exps = [tuple(int(x) for x in t) for t in self.exps] or [ZERO_TRIPLE]
        if exps[0][1] or exps[0][2]:
            raise ValueError("only f(0) may occur at depth 0")
        while len(exps) > 1 and exps[-1] == ZERO_TRIPLE:
            exps.pop()
        object.__setattr__(self, "exps", tuple(exps))

    def triple(self, j: int) -> Triple:
        if 0 <= j < len(self.exps):
            return self.exps[j]
        return ZERO_TRIPLE

    @property
    def degree(self) -> int:
        return sum(j * sum(t) for j, t in enumerate(self.exps))

    def sl2_weight(self) -> int:
        """h-eigenvalue of x(pi) (e raises by 2, f lowers by 2)."""
        return 2 * sum(t[2] for t in self.exps) - 2 * sum(t[0] for t in self.exps)


def satisfies_dc_sl2(pi: Sl2Partition, k: int) -> bool:
    return all(
        _dc_pair_ok(pi.triple(j + 1), pi.triple(j), k) for j in range(0, len(pi.exps))
    )


def satisfies_ic_sl2(pi: Sl2Partition, k0: int, k1: int) -> bool:
    return pi.triple(1)[2] <= k0 and pi.triple(0)[0] <= k1


def enumerate_sl2_partitions(k0: int, k1: int, n: int) -> List[Sl2Partition]:
    k = k0 + k1
    if k < 1:
        raise ValueError("level must be positive")
    out: List[Sl2Partition] = []
    acc: List[Triple] = []

    def rec(j: int, prev: Triple, remaining: int):
        if remaining == 0:
            out.append(Sl2Partition(tuple(acc)))
            return
        if j > remaining:
            return
        for t in _triples(k):
            size = sum(t)
            if j * size > remaining or not _dc_pair_ok(t, prev, k):
                continue
            if j == 1 and t[2] > k0:
                continue
            acc.append(t)
            rec(j + 1, t, remaining - j * size)
            acc.pop()

    for c0 in range(min(k1, k) + 1):
        acc[:] = [(c0, 0, 0)]
        rec(1, (c0, 0, 0), n)
    out.sort(key=lambda p: tuple(x for t in p.exps for x in t))
    return out


def enumerate_sl2(lam: Tuple[int, int], n: int) -> WeightedCount:
    """Counts of DC(j>=0)+IC monomials of degree n by absolute h-eigenvalue."""
    k0, k1 = lam
    table = WeightedCount()
    for pi in enumerate_sl2_partitions(k0, k1, n):
        table.add((k1 + pi.sl2_weight(),), pi.degree)
    return table


def sl2_counts(lam: Tuple[int, int], max_degree: int) -> WeightedCount:
    table = WeightedCount()
    for n in range(max_degree + 1):
        table.update(enumerate_sl2(lam, n))
    return table

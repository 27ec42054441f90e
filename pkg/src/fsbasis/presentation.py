"""Presented algebras P/I: ideal generators, graded quotient dimensions, normal forms.

Both polynomial rings have three letters per depth ``j >= 1``.  For B2 they
are ``x_2bar(-j), x_0(-j), x_2(-j)``; for sl2 they are ``f(-j), h(-j), e(-j)``.
A variable is encoded by its rank in the linear order on parts (see
:func:`fsbasis.algebra.part_rank`) and a monomial by the tuple of its
variables sorted in decreasing order.  Comparing these tuples
lexicographically is the monomial order used throughout: within a degree
slice the *smallest* monomial of a polynomial is its leading term.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Color, color_weight, part_from_rank, part_rank
from .counts import WeightedCount
from .linalg import RationalEchelon, ModularEchelon, reduce_vector, reduced_echelon
from .partitions import ColoredPartition, DominantWeight, all_colored_partitions

Monomial = Tuple[int, ...]


class ResourceLimitError(RuntimeError):
    """A degree slice exceeded the matrix budget; ``partial`` holds finished degrees."""

    def __init__(self, message: str, partial: Optional[WeightedCount] = None):
        super().__init__(message)
        self.partial = partial if partial is not None else WeightedCount()


@dataclass(frozen=True)
class RingSpec:
    name: str
    letters: Tuple[str, str, str]
    letter_weights: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]
    # derivation data: letter -> (coefficient, letter) or None
    lowering: Tuple[Optional[Tuple[int, int]], ...]
    raising: Optional[Tuple[Optional[Tuple[int, int]], ...]] = None

    def var_weight(self, var: int) -> Tuple[int, ...]:
        return self.letter_weights[part_from_rank(var).color]

    def monomial_weight(self, mono: Monomial) -> Tuple[int, ...]:
        w = [0] * len(self.letter_weights[0])
        for v in mono:
            for i, x in enumerate(self.var_weight(v)):
                w[i] += x
        return tuple(w)

    def var_name(self, var: int) -> str:
        p = part_from_rank(var)
        return f"{self.letters[p.color]}(-{p.depth})"

    def var_from_name(self, name: str) -> int:
        letter, rest = name.split("(", 1)
        depth = -int(rest.rstrip(")"))
        return part_rank(self.letters.index(letter), depth)


B2_RING = RingSpec(
    name="B2",
    letters=("x2b", "x0", "x2"),
    letter_weights=tuple(color_weight(c).doubled for c in Color),  # type: ignore[arg-type]
    lowering=(None, (1, Color.TWOBAR), (1, Color.ZERO)),
)

# f, h, e sit in the slots of 2bar, 0, 2; ad f: e -> -h, h -> 2f; ad e: f -> h, h -> -2e
A1_RING = RingSpec(
    name="A1",
    letters=("f", "h", "e"),
    letter_weights=((-2,), (0,), (2,)),
    lowering=(None, (2, 0), (-1, 1)),
    raising=((1, 1), (-2, 2), None),
)

RINGS = {"B2": B2_RING, "A1": A1_RING}


def mono_degree(mono: Monomial) -> int:
    return sum(part_from_rank(v).depth for v in mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b, reverse=True))


def mono_from_partition(pi: ColoredPartition) -> Monomial:
    return tuple(sorted((part_rank(c, j) for c, j in pi.parts()), reverse=True))


def partition_from_mono(mono: Monomial) -> ColoredPartition:
    return ColoredPartition.from_parts(part_from_rank(v) for v in mono)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int) -> Tuple[Monomial, ...]:
    """All monomials of degree n, in increasing monomial order."""
    return tuple(sorted(mono_from_partition(pi) for pi in all_colored_partitions(n)))


class GradedPolynomial:
    """Exact-rational combination of commutative monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, object]] = None):
        self.terms: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(m)] = self.terms.get(tuple(m), 0) + c
        self.terms = {m: c for m, c in self.terms.items() if c}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"GradedPolynomial({self.terms!r})"

    def degrees(self) -> set:
        return {mono_degree(m) for m in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def weights(self, ring: RingSpec) -> set:
        return {ring.monomial_weight(m) for m in self.terms}

    def leading_monomial(self) -> Monomial:
        return min(self.terms)

    def normalized(self) -> "GradedPolynomial":
        """Scaled so the leading coefficient is 1."""
        lc = self.terms[self.leading_monomial()]
        return GradedPolynomial({m: c / lc for m, c in self.terms.items()})

    def times_monomial(self, mono: Monomial) -> Dict[Monomial, Fraction]:
        return {mono_mul(m, mono): c for m, c in self.terms.items()}

    def to_dict(self, ring: RingSpec) -> dict:
        terms = []
        for m in sorted(self.terms):
            exps: Dict[str, int] = {}
            for v in m:
                name = ring.var_name(v)
                exps[name] = exps.get(name, 0) + 1
            c = self.terms[m]
            terms.append({"monomial": exps, "num": c.numerator, "den": c.denominator})
        return {"degree": self.degree, "terms": terms}

    @classmethod
    def from_dict(cls, data: dict, ring: RingSpec) -> "GradedPolynomial":
        terms = {}
        for t in data["terms"]:
            vars_ = []
            for name, e in t["monomial"].items():
                vars_.extend([ring.var_from_name(name)] * int(e))
            terms[tuple(sorted(vars_, reverse=True))] = Fraction(t["num"], t["den"])
        poly = cls(terms)
        if poly and poly.degree != data["degree"]:
            raise ValueError("degree field disagrees with the terms")
        return poly

    def to_str(self, ring: RingSpec) -> str:
        out = []
        for m in sorted(self.terms):
            c = self.terms[m]
            factors = "*".join(ring.var_name(v) for v in m)
            out.append(f"{c}*{factors}")
        return " + ".join(out) or "0"


def apply_derivation(
    poly: GradedPolynomial, table: Sequence[Optional[Tuple[int, int]]]
) -> GradedPolynomial:
    """Extend a letter map (same depth) to the polynomial ring as a derivation."""
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for mono, c in poly.terms.items():
        for i, v in enumerate(mono):
            if i and mono[i - 1] == v:
                continue  # handle each distinct variable once
            image = table[part_from_rank(v).color]
            if image is None:
                continue
            mult = mono.count(v)
            coef, letter = image
            new_var = part_rank(letter, part_from_rank(v).depth)
            rest = list(mono)
            rest.remove(v)
            out[tuple(sorted(rest + [new_var], reverse=True))] += c * mult * coef
    return GradedPolynomial(out)


def theta_power_coefficient(k: int, n: int, ring: RingSpec = B2_RING) -> GradedPolynomial:
    """Coefficient of the (k+1)-st power of the top field at total mode n.

    Sum over ordered (j_1, ..., j_{k+1}), j_i <= -1, sum n, of the product
    of top letters (x_2 for B2, e for sl2).
    """
    if n > -k - 1:
        raise ValueError(f"need n <= -k-1 = {-k - 1}, got {n}")
    terms: Dict[Monomial, int] = {}
    size = k + 1

    def parts(remaining: int, count: int, max_part: int):
        if count == 0:
            if remaining == 0:
                yield []
            return
        for p in range(min(max_part, remaining - (count - 1)), 0, -1):
            for rest in parts(remaining - p, count - 1, p):
                yield [p] + rest

    for depths in parts(-n, size, -n):
        ordered = math.factorial(size)
        for d in set(depths):
            ordered //= math.factorial(depths.count(d))
        mono = tuple(sorted((part_rank(2, d) for d in depths), reverse=True))
        terms[mono] = ordered
    return GradedPolynomial(terms)


class ClosureError(RuntimeError):
    pass


def lowering_closure(polys: Iterable[GradedPolynomial], ring: RingSpec = B2_RING) -> List[GradedPolynomial]:
    """Span-independent iterates of the lowering derivation (plus raising for sl2).

    Returns the inputs followed by new iterates; dependent vectors are dropped.
    """
    out: List[GradedPolynomial] = []
    ech = RationalEchelon()
    for p in polys:
        if not p.is_homogeneous():
            raise ValueError("closure input must be homogeneous")
        if not p:
            continue
        bound = 2 * max(len(m) for m in p.terms) + 2
        cur, steps = p, 0
        while cur:
            if ech.add(cur.terms):
                out.append(cur)
            cur = apply_derivation(cur, ring.lowering)
            steps += 1
            if steps > bound:
                raise ClosureError(f"lowering string did not terminate within {bound} steps")
    if ring.raising is not None:
        # fold in ad e images until the span is stable under both operators
        queue = list(out)
        while queue:
            v = queue.pop(0)
            for table in (ring.raising, ring.lowering):
                w = apply_derivation(v, table)
                if w and ech.add(w.terms):
                    out.append(w)
                    queue.append(w)
    return out


def _dedupe(polys: Iterable[GradedPolynomial]) -> List[GradedPolynomial]:
    seen = set()
    out = []
    for p in polys:
        q = p.normalized()
        key = frozenset(q.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(q)
    return out


@dataclass
class IdealTruncation:
    ring: RingSpec
    generators: List[GradedPolynomial]
    degree_cut: int
    label: str = ""

    def __post_init__(self):
        for g in self.generators:
            if not g.is_homogeneous():
                raise ValueError("ideal generators must be homogeneous")
            if len(g.weights(self.ring)) != 1:
                raise ValueError("ideal generators must be weight vectors")
            if g.degree > self.degree_cut:
                raise ValueError("generator above the degree cut")

    def by_degree(self) -> Dict[int, List[GradedPolynomial]]:
        out: Dict[int, List[GradedPolynomial]] = defaultdict(list)
        for g in self.generators:
            out[g.degree].append(g)
        return dict(out)

    def dump(self) -> List[dict]:
        """Generator dump: list of {"degree", "terms": [{"monomial", "num", "den"}]}."""
        return [g.to_dict(self.ring) for g in self.generators]

    def to_json(self) -> str:
        return json.dumps(self.dump(), sort_keys=True)

    @classmethod
    def from_dump(cls, data: List[dict], ring: RingSpec, degree_cut: int) -> "IdealTruncation":
        return cls(ring, [GradedPolynomial.from_dict(d, ring) for d in data], degree_cut)

    def content_hash(self) -> str:
        payload = json.dumps({"ring": self.ring.name, "gens": self.dump()}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()

    def without(self, index: int) -> "IdealTruncation":
        gens = list(self.generators)
        del gens[index]
        return IdealTruncation(self.ring, gens, self.degree_cut, self.label + f"-drop{index}")

    def is_closed(self) -> bool:
        """Re-closing the generator set adds nothing to its span."""
        ech = RationalEchelon()
        for g in self.generators:
            ech.add(g.terms)
        r = ech.rank
        for g in lowering_closure(self.generators, self.ring):
            ech.add(g.terms)
        return ech.rank == r


def ideal_generators_B2(lam: DominantWeight, N: int) -> IdealTruncation:
    if N < 1:
        raise ValueError("degree cut must be positive")
    k = lam.level
    gens: List[GradedPolynomial] = []
    for n in range(-k - 1, -N - 1, -1):
        gens.extend(lowering_closure([theta_power_coefficient(k, n, B2_RING)], B2_RING))
    x2 = part_rank(Color.TWO, 1)
    if lam.k0 + 1 <= N:
        gens.append(GradedPolynomial({(x2,) * (lam.k0 + 1): 1}))
    if lam.k0 + lam.k2 + 1 <= N:
        gens.extend(
            lowering_closure([GradedPolynomial({(x2,) * (lam.k0 + lam.k2 + 1): 1})], B2_RING)
        )
    return IdealTruncation(B2_RING, _dedupe(gens), N, label=f"B2{lam}")


def ideal_generators_A1(k: int, N: int) -> IdealTruncation:
    if N < 1:
        raise ValueError("degree cut must be positive")
    if k < 1:
        raise ValueError("level must be positive")
    gens: List[GradedPolynomial] = []
    for n in range(-k - 1, -N - 1, -1):
        gens.extend(lowering_closure([theta_power_coefficient(k, n, A1_RING)], A1_RING))
    return IdealTruncation(A1_RING, _dedupe(gens), N, label=f"A1k{k}")


def closure_dimension(k: int, n: int, ring: RingSpec = B2_RING) -> int:
    """Dimension of the g_0 (resp. sl2) module spanned by one theta coefficient."""
    return len(lowering_closure([theta_power_coefficient(k, n, ring)], ring))


# --- degree slices -----------------------------------------------------------

DEFAULT_BUDGET = 20_000_000  # rows * columns per weight block


def monomials_by_weight(ring: RingSpec, n: int) -> Dict[Tuple[int, ...], List[Monomial]]:
    out: Dict[Tuple[int, ...], List[Monomial]] = defaultdict(list)
    for m in monomials_of_degree(n):
        out[ring.monomial_weight(m)].append(m)
    return dict(out)


def slice_rows(ideal: IdealTruncation, n: int) -> Dict[Tuple[int, ...], List[Dict[Monomial, Fraction]]]:
    """Spanning rows ``m * g`` of the degree-n slice of the ideal, by weight."""
    ring = ideal.ring
    rows: Dict[Tuple[int, ...], List[Dict[Monomial, Fraction]]] = defaultdict(list)
    for g in ideal.generators:
        d = g.degree
        if d > n:
            continue
        gw = ring.monomial_weight(g.leading_monomial())
        for m in monomials_of_degree(n - d):
            mw = ring.monomial_weight(m)
            w = tuple(x + y for x, y in zip(gw, mw))
            rows[w].append(g.times_monomial(m))
    return dict(rows)


def slice_ranks(
    ideal: IdealTruncation, n: int, modulus: Optional[int] = None, budget: int = DEFAULT_BUDGET
) -> Dict[Tuple[int, ...], int]:
    """Rank of the degree-n slice of the ideal in each weight block."""
    blocks = monomials_by_weight(ideal.ring, n)
    out = {}
    for w, rows in slice_rows(ideal, n).items():
        cols = len(blocks.get(w, ()))
        if len(rows) * cols > budget:
            raise ResourceLimitError(
                f"degree {n}, weight {w}: {len(rows)} x {cols} exceeds budget {budget}"
            )
        ech = RationalEchelon() if modulus is None else ModularEchelon(modulus)
        for r in rows:
            ech.add(r)
            if ech.rank == cols:
                break
        out[w] = ech.rank
    return out


def graded_quotient_dims(
    ideal: IdealTruncation,
    N: int,
    refine_by_weight: bool = True,
    modulus: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    cache=None,
) -> WeightedCount:
    """dim (P/I)_n for n <= N, per weight when ``refine_by_weight``.

    ``modulus=None`` computes ranks over Q; an integer computes them over GF(p).
    """
    if ideal.degree_cut < N:
        raise ValueError(f"ideal truncated at {ideal.degree_cut} < {N}")
    key = None
    if cache is not None:
        key = cache.key(
            "quotient", ideal.content_hash(), N=N, weighted=refine_by_weight, modulus=modulus
        )
        hit = cache.get(key)
        if hit is not None:
            return WeightedCount.from_records(hit)
    table = WeightedCount()
    for n in range(N + 1):
        try:
            ranks = slice_ranks(ideal, n, modulus, budget)
        except ResourceLimitError as exc:
            raise ResourceLimitError(str(exc), table) from None
        for w, monos in monomials_by_weight(ideal.ring, n).items():
            dim = len(monos) - ranks.get(w, 0)
            table.add(w if refine_by_weight else (), n, dim)
    if cache is not None:
        cache.put(key, table.to_records())
    return table


@dataclass
class SliceEchelon:
    """Reduced echelon form of one (degree, weight) block."""

    degree: int
    weight: Tuple[int, ...]
    monomials: List[Monomial]
    pivots: Dict[Monomial, Dict[Monomial, Fraction]]

    @property
    def standard_monomials(self) -> List[Monomial]:
        return [m for m in self.monomials if m not in self.pivots]


def slice_echelon(
    ideal: IdealTruncation, n: int, weight: Tuple[int, ...], budget: int = DEFAULT_BUDGET
) -> SliceEchelon:
    monos = monomials_by_weight(ideal.ring, n).get(weight, [])
    rows = slice_rows(ideal, n).get(weight, [])
    if len(rows) * len(monos) > budget:
        raise ResourceLimitError(f"degree {n}, weight {weight} exceeds budget {budget}")
    return SliceEchelon(n, weight, monos, reduced_echelon(rows))


def slice_echelons(ideal: IdealTruncation, n: int) -> List[SliceEchelon]:
    return [
        slice_echelon(ideal, n, w) for w in sorted(monomials_by_weight(ideal.ring, n))
    ]


def normal_form(mono: Monomial, ideal: IdealTruncation, N: Optional[int] = None) -> GradedPolynomial:
    """Reduction of a monomial modulo the ideal slice; pivots are smallest monomials."""
    mono = tuple(sorted(mono, reverse=True))
    n = mono_degree(mono)
    if N is not None and n > N:
        raise ValueError("monomial above the degree cut")
    if n > ideal.degree_cut:
        raise ValueError("monomial above the ideal truncation")
    ech = slice_echelon(ideal, n, ideal.ring.monomial_weight(mono))
    return GradedPolynomial(reduce_vector({mono: 1}, ech.pivots))

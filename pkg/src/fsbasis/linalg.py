"""Sparse elimination over Q (fraction-free) and over GF(p).

Rows are dicts ``column -> coefficient``; columns are any totally ordered
keys.  The pivot of a row is its smallest column, so with columns ordered
by the monomial order the pivots are leading (smallest) monomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, Iterable, List, Optional, Sequence

import sympy

Row = Dict[Hashable, int]

DEFAULT_PRIMES = (2147483647, 2147483629)


def check_primes(primes: Sequence[int]) -> List[int]:
    """Validate a modular prime list: at least two distinct primes > 2^30."""
    primes = list(dict.fromkeys(int(p) for p in primes))
    if len(primes) < 2:
        raise ValueError("modular mode needs at least two distinct primes")
    for p in primes:
        if p <= 2**30 or not sympy.isprime(p):
            raise ValueError(f"{p} is not a prime above 2^30")
    return primes


def integer_row(row: Dict[Hashable, object]) -> Row:
    """Scale a rational row to a primitive integer row."""
    fr = {c: Fraction(v) for c, v in row.items() if v}
    if not fr:
        return {}
    den = lcm(*(v.denominator for v in fr.values()))
    out = {c: int(v * den) for c, v in fr.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    return {c: v // g for c, v in out.items()}


class RationalEchelon:
    """Incremental fraction-free row echelon form over Z (hence rank over Q)."""

    def __init__(self):
        self.pivots: Dict[Hashable, Row] = {}

    def add(self, row: Dict[Hashable, object]) -> bool:
        r = integer_row(row)
        while r:
            col = min(r)
            prow = self.pivots.get(col)
            if prow is None:
                if r[col] < 0:
                    r = {c: -v for c, v in r.items()}
                self.pivots[col] = r
                return True
            a, b = prow[col], r[col]
            g = gcd(a, b)
            a, b = a // g, b // g
            new: Row = {c: a * v for c, v in r.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - b * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            r = {c: v // g for c, v in new.items()} if g > 1 else new
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


class ModularEchelon:
    """Incremental row echelon form over GF(p); pivot rows are monic."""

    def __init__(self, p: int):
        self.p = p
        self.pivots: Dict[Hashable, Row] = {}

    def _reduce_input(self, row: Dict[Hashable, object]) -> Row:
        p = self.p
        out = {}
        for c, v in row.items():
            v = Fraction(v)
            x = v.numerator % p * pow(v.denominator % p, -1, p) % p
            if x:
                out[c] = x
        return out

    def add(self, row: Dict[Hashable, object]) -> bool:
        p = self.p
        r = self._reduce_input(row)
        while r:
            col = min(r)
            prow = self.pivots.get(col)
            if prow is None:
                inv = pow(r[col], -1, p)
                self.pivots[col] = {c: v * inv % p for c, v in r.items()}
                return True
            f = r[col]
            for c, v in prow.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[Dict[Hashable, object]], modulus: Optional[int] = None) -> int:
    ech = RationalEchelon() if modulus is None else ModularEchelon(modulus)
    for r in rows:
        ech.add(r)
    return ech.rank


def reduced_echelon(rows: Iterable[Dict[Hashable, object]]) -> Dict[Hashable, Dict[Hashable, Fraction]]:
    """Reduced row echelon form over Q keyed by pivot (smallest) column.

    Every pivot row is monic and no pivot column appears in another row.
    """
    ech = RationalEchelon()
    for r in rows:
        ech.add(r)
    pivots = {
        col: {c: Fraction(v, row[col]) for c, v in row.items()}
        for col, row in ech.pivots.items()
    }
    # back-substitute from the largest pivot column down
    for col in sorted(pivots, reverse=True):
        row = pivots[col]
        for other_col, other in pivots.items():
            if other_col == col or col not in other:
                continue
            f = other[col]
            for c, v in row.items():
                nv = other.get(c, 0) - f * v
                if nv:
                    other[c] = nv
                else:
                    other.pop(c, None)
    return pivots


def reduce_vector(
    vec: Dict[Hashable, object], pivots: Dict[Hashable, Dict[Hashable, Fraction]]
) -> Dict[Hashable, Fraction]:
    """Remainder of ``vec`` modulo the row space of a reduced echelon form."""
    out = {c: Fraction(v) for c, v in vec.items() if v}
    for col in sorted(c for c in list(out) if c in pivots):
        f = out.get(col)
        if not f:
            continue
        for c, v in pivots[col].items():
            nv = out.get(c, 0) - f * v
            if nv:
                out[c] = nv
            else:
                out.pop(c, None)
    return out

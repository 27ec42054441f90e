from fractions import Fraction
from itertools import combinations

import pytest

from fsbasis.algebra import (
    ALPHA1,
    ALPHA2,
    B2_ROOTS,
    EPS1,
    EPS2,
    OMEGA,
    OMEGA2,
    THETA,
    Color,
    FiniteWeight,
    Part,
    Sl2Symbol,
    b2_weyl_orbit,
    color_weight,
    lower,
    sl2_lower,
)


def test_color_weights():
    assert color_weight(Color.TWOBAR) == FiniteWeight.from_eps(1, -1)
    assert color_weight(Color.ZERO) == FiniteWeight.from_eps(1, 0)
    assert color_weight(Color.TWO) == FiniteWeight.from_eps(1, 1)


def test_color_order():
    assert Color.TWOBAR < Color.ZERO < Color.TWO
    assert len(list(Color)) == 3


def test_lower_string():
    assert lower(Color.TWO) == Color.ZERO
    assert lower(Color.ZERO) == Color.TWOBAR
    assert lower(Color.TWOBAR) is None
    for c in Color:
        x = c
        for _ in range(3):
            x = lower(x) if x is not None else None
        assert x is None


def test_lower_drops_weight_by_eps2():
    for c in Color:
        d = lower(c)
        if d is not None:
            assert color_weight(d) == color_weight(c) - EPS2


def test_sl2_lower():
    assert sl2_lower(Sl2Symbol.E) == (-1, Sl2Symbol.H)
    assert sl2_lower(Sl2Symbol.H) == (2, Sl2Symbol.F)
    assert sl2_lower(Sl2Symbol.F) is None


def test_weights_doubled_and_exact():
    spin = OMEGA2
    assert spin.e1 == Fraction(1, 2) and spin.e2 == Fraction(1, 2)
    assert spin.is_integral()
    assert not FiniteWeight(1, 0).is_integral()
    assert THETA == EPS1 + EPS2 == ALPHA1 + 2 * ALPHA2
    assert OMEGA == EPS1 and OMEGA.dot(OMEGA) == 1


def test_root_system():
    assert len(B2_ROOTS) == 8
    long = [r for r in B2_ROOTS if r.dot(r) == 2]
    assert len(long) == 4
    assert len(b2_weyl_orbit(OMEGA2)) == 4
    assert len(b2_weyl_orbit(EPS1)) == 4


def test_part_order_total_and_matches_depth_then_color():
    parts = [Part(c, j) for j in range(1, 5) for c in Color]
    for p, q in combinations(parts, 2):
        assert (p < q) != (q < p)
        expect = p.depth > q.depth or (p.depth == q.depth and p.color < q.color)
        assert (p < q) == expect
    # x_2(-(n-1)) precedes x_2bar(-n) in the reversed sense: deeper is smaller
    assert Part(Color.TWO, 3) < Part(Color.TWOBAR, 2)
    assert sorted(parts) == sorted(parts, key=lambda p: (-p.depth, p.color))

import json
import random
from collections import Counter
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsbasis.algebra import FiniteWeight
from fsbasis.counts import WEIGHTED_COUNT_SCHEMA, WeightedCount
from fsbasis.partitions import (
    ColoredPartition,
    DominantWeight,
    SemiInfiniteMonomial,
    Sl2Partition,
    StabilizationError,
    admissible_counts,
    current_shifted_weight,
    dominant_weights,
    enumerate_admissible,
    enumerate_sl2,
    find_leading_term_divisor,
    is_admissible,
    kappa,
    satisfies_dc,
    satisfies_dc_sl2,
    satisfies_ic,
    satisfies_ic_sl2,
    semi_infinite_multiplicities,
    semi_infinite_table,
    shift,
    tail_extend,
    tail_pattern,
    weight_degree,
)
from oracles import brute_admissible, free_fermion_b2

L0, L1, L2 = DominantWeight(1, 0, 0), DominantWeight(0, 1, 0), DominantWeight(0, 0, 1)
P = ColoredPartition.from_dict


# --- conditions -----------------------------------------------------------------


def test_dc_examples():
    assert satisfies_dc(ColoredPartition(), 1)
    assert not satisfies_dc(P({1: (0, 0, 1), 2: (0, 0, 1)}), 1)
    assert satisfies_dc(P({1: (1, 0, 1)}), 1)


def test_ic_examples():
    assert satisfies_ic(P({1: (0, 0, 1)}), L0)
    assert not satisfies_ic(P({1: (0, 0, 1)}), L1)
    assert not satisfies_ic(P({1: (1, 1, 0)}), L0)


def test_leading_term_examples():
    div = find_leading_term_divisor(P({1: (0, 0, 1), 2: (0, 0, 1)}), 1)
    assert div.family == 4 and div.j == 1
    assert div.factor == P({1: (0, 0, 1), 2: (0, 0, 1)})
    div = find_leading_term_divisor(P({1: (2, 0, 0)}), 1)
    assert div.family == 1 and div.factor == P({1: (2, 0, 0)})
    assert not satisfies_dc(P({1: (2, 0, 0)}), 1)
    assert find_leading_term_divisor(P({1: (1, 0, 1)}), 1) is None


# --- enumeration ------------------------------------------------------------------


def test_enumerate_examples():
    assert enumerate_admissible(L0, 0) == [ColoredPartition()]
    assert enumerate_admissible(L1, 1) == []
    got = enumerate_admissible(L0, 1)
    assert sorted(got, key=str) == sorted(
        [P({1: (1, 0, 0)}), P({1: (0, 1, 0)}), P({1: (0, 0, 1)})], key=str
    )


@pytest.mark.parametrize("lam", [lam for k in (1, 2) for lam in dominant_weights(k)], ids=str)
def test_enumerate_matches_brute_force(lam):
    for n in range(9):
        mine = sorted(tuple(pi.triple(j) for j in range(1, n + 1)) for pi in enumerate_admissible(lam, n))
        ref = sorted(
            tuple(tuple(pi.get(j, (0, 0, 0))) for j in range(1, n + 1))
            for pi in brute_admissible(n, lam.labels)
        )
        assert mine == ref, (lam, n)


def test_enumeration_order_is_deterministic():
    a = enumerate_admissible(DominantWeight(1, 0, 1), 6)
    assert a == sorted(a, key=ColoredPartition.sort_key)
    assert a == enumerate_admissible(DominantWeight(1, 0, 1), 6)


def test_weight_degree_examples():
    assert weight_degree(ColoredPartition()) == (FiniteWeight(0, 0), 0)
    assert weight_degree(P({1: (0, 0, 1)})) == (FiniteWeight.from_eps(1, 1), 1)
    assert weight_degree(P({2: (1, 1, 0)})) == (FiniteWeight.from_eps(2, -1), 4)


# --- shifts and tails --------------------------------------------------------------


def test_shift_examples():
    assert shift(ColoredPartition(), 5) == ColoredPartition()
    assert shift(P({3: (0, 1, 0)}), 2) == P({1: (0, 1, 0)})
    with pytest.raises(ValueError):
        shift(P({1: (0, 0, 1)}), 1)


def test_kappa_and_tail():
    assert kappa(L0) == P({1: (1, 0, 1)})
    assert kappa(L2) == P({2: (0, 1, 0), 1: (0, 1, 0)})
    assert kappa(DominantWeight(1, 1, 0)) == P({2: (1, 0, 1), 1: (1, 0, 1)})
    assert tail_pattern(L0) == {"even": (0, 0, 0), "odd": (1, 0, 1)}
    assert tail_pattern(L2) == {"even": (0, 1, 0), "odd": (0, 1, 0)}
    for lam in dominant_weights(2):
        t = tail_pattern(lam)
        assert kappa(lam) == P({1: t["odd"], 2: t["even"]})


def test_current_shifted_weight():
    mu = FiniteWeight.from_eps(1, 0)
    assert current_shifted_weight(mu, Fraction(3), 0, 2) == (mu, 3)
    assert current_shifted_weight(FiniteWeight(0, 0), 0, 2, 1) == (FiniteWeight.from_eps(2, 0), 2)
    for n, m in [(1, 2), (-2, 3), (-1, -1)]:
        step = current_shifted_weight(*current_shifted_weight(mu, 1, n, 2), m, 2)
        assert step == current_shifted_weight(mu, 1, n + m, 2)


triples = st.tuples(*(st.integers(0, 2),) * 3)
partitions = st.lists(triples, max_size=6).map(lambda ts: ColoredPartition(tuple(ts)))


@given(partitions, st.integers(-4, 4))
def test_shift_moves_degree(pi, p):
    if pi.part_count and p > 0 and any(pi.triple(j) != (0, 0, 0) for j in range(1, p + 1)):
        with pytest.raises(ValueError):
            shift(pi, p)
        return
    w, d = weight_degree(pi)
    assert weight_degree(shift(pi, p)) == (w, d - p * pi.part_count)


@given(partitions, st.integers(1, 2))
def test_dc_iff_no_leading_term(pi, k):
    div = find_leading_term_divisor(pi, k)
    assert satisfies_dc(pi, k) == (div is None)
    if div is not None:
        assert div.factor.part_count == k + 1


@settings(max_examples=60)
@given(st.sampled_from([lam for k in (1, 2) for lam in dominant_weights(k)]), st.integers(0, 7), st.randoms())
def test_tail_extension_preserves_admissibility(lam, n, rnd):
    pis = enumerate_admissible(lam, n)
    pi = rnd.choice(pis) if pis else ColoredPartition()
    ext = tail_extend(pi, lam)
    assert is_admissible(ext, lam)
    # same vector one step out: weight and depth unchanged
    s = SemiInfiniteMonomial(lam, pi, -rnd.randint(0, 2))
    assert s.extended().weight_depth() == s.weight_depth()


# --- semi-infinite -------------------------------------------------------------------


def _counter(table: WeightedCount) -> Counter:
    return Counter({c: n for c, n in table.items()})


def test_semi_infinite_matches_free_fermions():
    ref = free_fermion_b2(4)
    for lam, oracle in zip((L0, L1, L2), ref):
        table = semi_infinite_multiplicities(lam, 4)
        assert _counter(table) == +oracle, lam
        assert table[(lam.finite_part.doubled, 0)] == 1
    assert [semi_infinite_multiplicities(lam, 0).total(0) for lam in (L0, L1, L2)] == [1, 5, 4]


def _b2_weyl(w):
    a, b = w
    out = set()
    for x, y in ((a, b), (b, a)):
        for s in (1, -1):
            for t in (1, -1):
                out.add((s * x, t * y))
    return out


def test_semi_infinite_weyl_symmetric():
    table = semi_infinite_multiplicities(DominantWeight(1, 0, 1), 2)
    for (w, d), n in table.items():
        for v in _b2_weyl(w):
            assert table[(v, d)] == n


def test_semi_infinite_probe_order_independent():
    lam = L2
    forward = [semi_infinite_table(lam, -M, 3) for M in range(6)]
    backward = [semi_infinite_table(lam, -M, 3) for M in reversed(range(6))][::-1]
    assert forward == backward
    assert semi_infinite_multiplicities(lam, 3) == forward[-1]


def test_semi_infinite_bound_diagnostic():
    with pytest.raises(StabilizationError) as exc:
        semi_infinite_multiplicities(L0, 3, max_shift=1)
    assert len(exc.value.history) == 2


def test_semi_infinite_monomial_rejects_bad_base():
    with pytest.raises(ValueError):
        SemiInfiniteMonomial(L1, P({1: (0, 0, 1)}), 0)
    with pytest.raises(ValueError):
        SemiInfiniteMonomial(L0, ColoredPartition(), 1)


# --- sl2 ------------------------------------------------------------------------------


def test_sl2_examples():
    t = enumerate_sl2((1, 0), 0)
    assert t.items() == [(((0,), 0), 1)]
    assert enumerate_sl2((0, 1), 0).total(0) == 2
    assert satisfies_ic_sl2(Sl2Partition(((1, 0, 0),)), 0, 1)
    assert not satisfies_ic_sl2(Sl2Partition(((1, 0, 0),)), 1, 0)
    # DC reaches depth 0: f(0) f(-1) violates c_1 + b_1 + c_0 <= 1
    assert not satisfies_dc_sl2(Sl2Partition(((1, 0, 0), (1, 0, 0))), 1)
    with pytest.raises(ValueError):
        Sl2Partition(((0, 1, 0),))


# --- serialisation ----------------------------------------------------------------------


def test_partition_json_round_trip():
    pi = P({1: (1, 0, 2), 3: (0, 1, 0)})
    text = pi.to_json()
    assert json.loads(text) == {"exponents": {"1": [1, 0, 2], "3": [0, 1, 0]}}
    assert ColoredPartition.from_json(text) == pi


def test_weighted_count_json_schema():
    table = admissible_counts(DominantWeight(0, 1, 1), 4)
    records = json.loads(table.to_json())
    jsonschema.validate(records, WEIGHTED_COUNT_SCHEMA)
    assert WeightedCount.from_json(table.to_json()) == table
    with pytest.raises(ValueError):
        table.add((0, 0), 0, -1)

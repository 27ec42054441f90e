"""Acceptance criteria 1-8, each at its stated parameters.

Every test prints one ``criterion N: PASS|FAIL`` line; the lines are also
collected into the pytest terminal summary.  Run this file directly for
a standalone report.
"""

from fsbasis.partitions import DominantWeight, dominant_weights
from fsbasis.verify import (
    FINDING,
    PASS,
    check_A1_coincidence,
    check_arithmetic,
    check_closure_dimensions,
    check_leading_terms,
    check_negative_controls,
    check_semi_infinite,
    check_sl2_monomial_bases,
    check_W_basis,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def _failures(reports):
    return [r.summary() for r in reports if r.status != PASS]


def test_criterion_1_level1_w_basis():
    reports = [check_W_basis(lam, 8, arith="both") for lam in dominant_weights(1)]
    bad = _failures(reports)
    detail = "; ".join(f"{r.params['weight']}: {r.cells['enumerated']}" for r in reports)
    assert record(1, not bad, detail if not bad else bad), bad


def test_criterion_2_level2_w_basis():
    reports = [check_W_basis(lam, 6, arith="both") for lam in dominant_weights(2)]
    bad = _failures(reports)
    detail = f"{len(reports)} weights, n<=6, rational and two primes"
    assert record(2, not bad, detail if not bad else bad), bad


def test_criterion_3_a1_coincidence():
    reports = [check_A1_coincidence(k, 6, arith="both") for k in (1, 2)]
    bad = _failures(reports)
    k1 = reports[0].cells["a1 character"]
    values_ok = k1[:6] == [1, 3, 4, 7, 13, 19]
    ok = not bad and values_ok
    assert record(3, ok, f"k=1: {k1}; k=2: {reports[1].cells['a1 character']}"), (bad, k1)


def test_criterion_4_sl2_monomial_bases():
    weights = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    reports = [check_sl2_monomial_bases(lam, 6) for lam in weights]
    bad = _failures(reports)
    assert record(4, not bad, f"{len(weights)} weights, n<=6, per (weight, degree)"), bad


def test_criterion_5_semi_infinite():
    lams = list(dominant_weights(1))
    reports = [check_semi_infinite(lam, 4) for lam in lams]
    bad = _failures(reports)
    tops = [r.cells.get("semi-infinite", [None])[0] for r in reports]
    ok = not bad and tops == [1, 5, 4]
    assert record(5, ok, f"degree-0 totals {tops}"), (bad, tops)


def test_criterion_6_leading_terms():
    reports = [check_leading_terms(k, sample=10_000, exhaustive_degree=8, random_degree=20, seed=k)
               for k in (1, 2)]
    bad = _failures(reports)
    detail = "; ".join(f"k={r.params['level']}: {r.cells}" for r in reports)
    assert record(6, not bad, detail), bad


def test_criterion_7_arithmetic_and_controls():
    reports = [check_arithmetic(lam, 8) for lam in dominant_weights(1)]
    reports += [check_arithmetic(lam, 6) for lam in dominant_weights(2)]
    reports += [check_negative_controls(DominantWeight(1, 0, 0), 4, k=1),
                check_negative_controls(DominantWeight(2, 0, 0), 4, k=2)]
    bad = _failures(reports)
    slices = sum(r.cells.get("slices", 0) for r in reports)
    assert record(7, not bad, f"{slices} slices agree over Q and two primes; controls detected"), bad


def test_criterion_8_closure_dimension_ledger():
    r = check_closure_dimensions((1, 2), 8)
    observed = r.cells["observed"]
    complete = all(
        len(row) == 8 - k and len(set(row.values())) == 1
        for key, row in observed.items()
        for k in [int(key.split("k=")[1])]
    )
    ok = r.status in (PASS, FINDING) and complete
    summary = {key: sorted(set(row.values())) for key, row in observed.items()}
    detail = f"status={r.status}; observed {summary}; quoted {r.cells['quoted']}"
    assert record(8, ok, detail), r.to_dict()


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)

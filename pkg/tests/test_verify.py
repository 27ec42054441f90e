import jsonschema
import pytest

from fsbasis.partitions import ColoredPartition, DominantWeight
from fsbasis.presentation import ideal_generators_B2
from fsbasis.verify import (
    FAIL,
    FINDING,
    PASS,
    REPORT_SCHEMA,
    RESOURCE,
    UNSTABLE,
    CheckReport,
    check_A1_coincidence,
    check_arithmetic,
    check_closure_dimensions,
    check_leading_terms,
    check_negative_controls,
    check_pivots,
    check_semi_infinite,
    check_sl2_monomial_bases,
    check_W_basis,
    exit_status,
    leading_term_consistent,
    plan_checks,
    run_jobs,
)

L0 = DominantWeight(1, 0, 0)


def test_w_basis_pass_and_free_degrees():
    r = check_W_basis(L0, 6)
    assert r.status == PASS and r.mismatch is None
    assert r.cells["enumerated"][:2] == [1, 3]
    assert r.cells["rational"] == r.cells["enumerated"]


def test_w_basis_dropped_generator_fails_with_cell():
    ideal = ideal_generators_B2(L0, 4)
    r = check_W_basis(L0, 4, ideal=ideal.without(0))
    assert r.status == FAIL
    assert set(r.mismatch) >= {"weight", "degree"}
    assert r.mismatch["degree"] == 2


def test_w_basis_resource_limited():
    r = check_W_basis(L0, 4, budget=10)
    assert r.status == RESOURCE
    partial = r.cells["partial"]
    assert 2 <= len(partial) < 5
    assert partial == [1, 3, 4, 7, 13][: len(partial)]
    assert exit_status([r]) == 3


def test_a1_coincidence():
    r = check_A1_coincidence(1, 6)
    assert r.status == PASS
    for name, values in r.cells.items():
        assert values[:6] == [1, 3, 4, 7, 13, 19], name


def test_sl2_bases_top_of_L1():
    r = check_sl2_monomial_bases((0, 1), 6)
    assert r.status == PASS
    top = [rec for rec in r.cells["enumerated"] if rec["degree"] == 0]
    assert sum(rec["mult"] for rec in top) == 2


def test_semi_infinite_statuses():
    assert check_semi_infinite(DominantWeight(0, 0, 1), 3).status == PASS
    r = check_semi_infinite(L0, 3, max_shift=1)
    assert r.status == UNSTABLE


def test_leading_terms_small():
    r = check_leading_terms(1, sample=200, exhaustive_degree=5)
    assert r.status == PASS
    assert r.cells["dc_true"] > 0 and r.cells["dc_false"] > 0
    assert leading_term_consistent(ColoredPartition(), 1) is None


def test_negative_controls_detected():
    r = check_negative_controls(L0, 4)
    assert r.status == PASS
    assert r.cells["dropped_status"] == FAIL and r.cells["injected_detected"]


def test_arithmetic_agrees():
    assert check_arithmetic(DominantWeight(0, 1, 1), 5).status == PASS


def test_closure_dimension_reports_observed_values():
    r = check_closure_dimensions((1, 2), 6)
    assert r.status in (PASS, FINDING)
    for key, row in r.cells["observed"].items():
        assert len(set(row.values())) == 1, key


def test_pivots_consistent():
    assert check_pivots(DominantWeight(0, 1, 1), 5).status == PASS


def test_report_schema_and_determinism():
    reports = run_jobs(plan_checks("sl2-bases", level=1, degree=4))
    for r in reports:
        jsonschema.validate(r.to_dict(), REPORT_SCHEMA)
    again = run_jobs(plan_checks("sl2-bases", level=1, degree=4))
    assert [r.to_json(timing=False) for r in reports] == [r.to_json(timing=False) for r in again]


def test_parallel_jobs_keep_order():
    jobs = plan_checks("sl2-bases", level=2, degree=3)
    serial = [r.to_json(timing=False) for r in run_jobs(jobs)]
    parallel = [r.to_json(timing=False) for r in run_jobs(jobs, workers=2)]
    assert serial == parallel


def test_exit_status():
    mk = lambda s: CheckReport("x", {}, s)
    assert exit_status([mk(PASS), mk(FINDING)]) == 0
    assert exit_status([mk(PASS), mk(FAIL), mk(RESOURCE)]) == 2
    assert exit_status([mk(RESOURCE)]) == 3
    assert exit_status([mk(UNSTABLE)]) == 3


def test_plan_rejects_unknown():
    with pytest.raises(ValueError):
        plan_checks("nope")

"""Cross-checks between enumeration, presentation quotients and characters.

Every check returns a :class:`CheckReport`.  Statuses:

* ``pass`` / ``fail``: an exact equality held or did not;
* ``resource-limited``: a slice exceeded the matrix budget;
* ``unstable``: the semi-infinite probe did not stabilise;
* ``finding``: a recorded discrepancy with a published statement that does
  not affect the equalities being verified.
"""

from __future__ import annotations

import functools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .cache import ResultCache
from .characters import A1_AFFINE, B2_AFFINE, AffineDatum, weight_multiplicities
from .counts import WeightedCount
from .linalg import DEFAULT_PRIMES, check_primes
from .partitions import (
    ColoredPartition,
    DominantWeight,
    StabilizationError,
    admissible_counts,
    all_colored_partitions,
    divides,
    dominant_weights,
    find_leading_term_divisor,
    is_admissible,
    satisfies_dc,
    semi_infinite_multiplicities,
    sl2_counts,
)
from .presentation import (
    A1_RING,
    B2_RING,
    DEFAULT_BUDGET,
    IdealTruncation,
    ResourceLimitError,
    closure_dimension,
    graded_quotient_dims,
    ideal_generators_A1,
    ideal_generators_B2,
    partition_from_mono,
    slice_echelons,
    slice_ranks,
)

PASS, FAIL, RESOURCE, UNSTABLE, FINDING = "pass", "fail", "resource-limited", "unstable", "finding"
FAILING = (FAIL,)

ARITH_MODES = ("rational", "modular", "both")


@dataclass
class CheckReport:
    id: str
    params: Dict[str, Any]
    status: str
    cells: Dict[str, Any] = field(default_factory=dict)
    mismatch: Optional[Dict[str, Any]] = None
    notes: List[str] = field(default_factory=list)
    timing: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status not in FAILING

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "params": self.params,
            "status": self.status,
            "cells": self.cells,
            "mismatch": self.mismatch,
            "notes": self.notes,
        }
        if timing:
            out["timing"] = round(self.timing, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def summary(self) -> str:
        where = ""
        if self.mismatch:
            where = f" first mismatch {self.mismatch}"
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.status:16s} {self.id} ({params}){where}"


REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "id": {"type": "string"},
        "params": {"type": "object"},
        "status": {"enum": [PASS, FAIL, RESOURCE, UNSTABLE, FINDING]},
        "cells": {"type": "object"},
        "mismatch": {"type": ["object", "null"]},
        "notes": {"type": "array", "items": {"type": "string"}},
        "timing": {"type": "number"},
    },
    "required": ["id", "params", "status", "cells", "mismatch"],
}


def _timed(fn: Callable[..., CheckReport]) -> Callable[..., CheckReport]:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs) -> CheckReport:
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.timing = time.perf_counter() - t0
        return report

    return wrapper


def _mismatch(a_name: str, a: WeightedCount, b_name: str, b: WeightedCount) -> Optional[dict]:
    mm = a.first_mismatch(b)
    if mm is None:
        return None
    (w, d), x, y = mm
    return {"weight": list(w), "degree": d, a_name: x, b_name: y}


def _lam_str(lam: DominantWeight) -> str:
    return ",".join(str(x) for x in lam.labels)


def _quotient_tables(
    ideal: IdealTruncation,
    N: int,
    weighted: bool,
    arith: str,
    primes: Sequence[int],
    cache: Optional[ResultCache],
    budget: int = DEFAULT_BUDGET,
) -> Dict[str, WeightedCount]:
    if arith not in ARITH_MODES:
        raise ValueError(f"unknown arithmetic mode {arith!r}")
    out = {}
    if arith in ("rational", "both"):
        out["rational"] = graded_quotient_dims(ideal, N, weighted, None, budget, cache)
    if arith in ("modular", "both"):
        for p in check_primes(primes):
            out[f"mod {p}"] = graded_quotient_dims(ideal, N, weighted, p, budget, cache)
    return out


def _compare_all(expected_name: str, expected: WeightedCount, others: Dict[str, WeightedCount]):
    for name, table in others.items():
        mm = _mismatch(expected_name, expected, name, table)
        if mm is not None:
            return mm
    return None


@_timed
def check_W_basis(
    lam: DominantWeight,
    N: int,
    weighted: bool = True,
    arith: str = "rational",
    primes: Sequence[int] = DEFAULT_PRIMES,
    cache: Optional[ResultCache] = None,
    ideal: Optional[IdealTruncation] = None,
    budget: int = DEFAULT_BUDGET,
) -> CheckReport:
    """DC+IC counts against dim (P/I_Lambda)_n for every n <= N."""
    params = {"weight": _lam_str(lam), "N": N, "weighted": weighted, "arith": arith}
    expected = admissible_counts(lam, N)
    if not weighted:
        expected = expected.forget_weights()
    if ideal is None:
        ideal = ideal_generators_B2(lam, N)
    else:
        params["ideal"] = ideal.label
    try:
        tables = _quotient_tables(ideal, N, weighted, arith, primes, cache, budget)
    except ResourceLimitError as exc:
        cells = {"partial": exc.partial.totals(max(exc.partial.degrees(), default=-1))}
        return CheckReport("w-basis", params, RESOURCE, cells, notes=[str(exc)])
    mm = _compare_all("enumerated", expected, tables)
    cells = {"enumerated": expected.totals(N)}
    cells.update({name: t.totals(N) for name, t in tables.items()})
    return CheckReport("w-basis", params, FAIL if mm else PASS, cells, mm)


@_timed
def check_A1_coincidence(
    k: int,
    N: int,
    arith: str = "rational",
    primes: Sequence[int] = DEFAULT_PRIMES,
    cache: Optional[ResultCache] = None,
) -> CheckReport:
    """B2 enumeration for k*Lambda0, the A1 quotient and the A1 character agree per degree."""
    params = {"level": k, "N": N, "arith": arith}
    enumerated = admissible_counts(DominantWeight(k, 0, 0), N).forget_weights()
    try:
        quotients = _quotient_tables(ideal_generators_A1(k, N), N, False, arith, primes, cache)
    except ResourceLimitError as exc:
        return CheckReport("a1-coincidence", params, RESOURCE, notes=[str(exc)])
    character = weight_multiplicities(A1_AFFINE, (k, 0), N).forget_weights()
    others = {f"a1 quotient ({name})": t for name, t in quotients.items()}
    others["a1 character"] = character
    mm = _compare_all("b2 enumerated", enumerated, others)
    cells = {"b2 enumerated": enumerated.totals(N)}
    cells.update({name: t.totals(N) for name, t in others.items()})
    return CheckReport("a1-coincidence", params, FAIL if mm else PASS, cells, mm)


@_timed
def check_sl2_monomial_bases(lam: Tuple[int, int], N: int) -> CheckReport:
    """DC(j>=0)+IC monomial counts against A1^(1) weight multiplicities."""
    k0, k1 = lam
    params = {"weight": f"{k0},{k1}", "N": N}
    enumerated = sl2_counts((k0, k1), N)
    character = weight_multiplicities(A1_AFFINE, (k0, k1), N)
    mm = _mismatch("enumerated", enumerated, "character", character)
    cells = {"enumerated": enumerated.to_records(), "character_totals": character.totals(N)}
    return CheckReport("sl2-bases", params, FAIL if mm else PASS, cells, mm)


@_timed
def check_semi_infinite(
    lam: DominantWeight, N: int, max_shift: Optional[int] = None, cache: Optional[ResultCache] = None
) -> CheckReport:
    """Stabilised semi-infinite monomial counts against B2^(1) multiplicities."""
    params = {"weight": _lam_str(lam), "N": N}
    try:
        if cache is not None:
            key = cache.key("semi-infinite", lam.labels, N=N, max_shift=max_shift)
            semi = cache.cached(
                key,
                lambda: semi_infinite_multiplicities(lam, N, max_shift),
                WeightedCount.to_records,
                WeightedCount.from_records,
            )
        else:
            semi = semi_infinite_multiplicities(lam, N, max_shift)
    except StabilizationError as exc:
        return CheckReport("semi-infinite", params, UNSTABLE, notes=[str(exc)])
    character = character_table(B2_AFFINE, lam.labels, N, cache)
    mm = _mismatch("semi-infinite", semi, "character", character)
    cells = {"semi-infinite": semi.totals(N), "character": character.totals(N)}
    return CheckReport("semi-infinite", params, FAIL if mm else PASS, cells, mm)


def character_table(
    datum: AffineDatum, labels, N: int, cache: Optional[ResultCache] = None
) -> WeightedCount:
    labels = tuple(labels)
    if cache is None:
        return weight_multiplicities(datum, labels, N)
    return cache.cached(
        cache.key("character", datum.name, labels, N=N),
        lambda: weight_multiplicities(datum, labels, N),
        WeightedCount.to_records,
        WeightedCount.from_records,
    )


# --- leading terms -----------------------------------------------------------


def random_partition(rng: random.Random, max_degree: int, k: int) -> ColoredPartition:
    """A random coloured partition of degree <= max_degree.

    Exponents are drawn small (mostly <= k) so that both DC-satisfying and
    DC-violating partitions occur with reasonable frequency.
    """
    budget = rng.randint(0, max_degree)
    table: Dict[int, List[int]] = {}
    while budget > 0:
        j = rng.randint(1, budget)
        color = rng.randrange(3)
        e = rng.randint(1, max(1, min(k + 1, budget // j)))
        table.setdefault(j, [0, 0, 0])[color] += e
        budget -= j * e
    return ColoredPartition.from_dict(table)


def leading_term_consistent(pi: ColoredPartition, k: int) -> Optional[str]:
    """None if DC(pi) agrees with divisor detection; otherwise a reason."""
    dc = satisfies_dc(pi, k)
    div = find_leading_term_divisor(pi, k)
    if dc and div is not None:
        return f"{pi} satisfies DC but {div} divides it"
    if not dc and div is None:
        return f"{pi} violates DC but no leading term divides it"
    if div is not None:
        if not divides(div.factor, pi):
            return f"{div} does not divide {pi}"
        if div.factor.part_count != k + 1:
            return f"{div} has {div.factor.part_count} parts, expected {k + 1}"
    return None


@_timed
def check_leading_terms(
    k: int,
    sample: int = 10_000,
    exhaustive_degree: int = 8,
    random_degree: int = 20,
    seed: int = 0,
) -> CheckReport:
    """DC(pi, k) holds iff no leading-term factor divides x(pi)."""
    params = {
        "level": k,
        "sample": sample,
        "exhaustive_degree": exhaustive_degree,
        "random_degree": random_degree,
        "seed": seed,
    }
    counts = {"exhaustive": 0, "random": 0, "dc_true": 0, "dc_false": 0}

    def run(pi) -> Optional[str]:
        if satisfies_dc(pi, k):
            counts["dc_true"] += 1
        else:
            counts["dc_false"] += 1
        return leading_term_consistent(pi, k)

    for n in range(exhaustive_degree + 1):
        for pi in all_colored_partitions(n):
            counts["exhaustive"] += 1
            bad = run(pi)
            if bad:
                return CheckReport("leading-terms", params, FAIL, counts, {"reason": bad})
    rng = random.Random(seed)
    for _ in range(sample):
        pi = random_partition(rng, random_degree, k)
        counts["random"] += 1
        bad = run(pi)
        if bad:
            return CheckReport("leading-terms", params, FAIL, counts, {"reason": bad})
    # the detector must see an injected violation
    for j in (1, 2, 5):
        for color in range(3):
            table = {j: [0, 0, 0]}
            table[j][color] = k + 1
            injected = ColoredPartition.from_dict(table)
            if satisfies_dc(injected, k) or find_leading_term_divisor(injected, k) is None:
                return CheckReport(
                    "leading-terms", params, FAIL, counts,
                    {"reason": f"injected violation {injected} not detected"},
                )
    return CheckReport("leading-terms", params, PASS, counts)


# --- arithmetic and negative controls -----------------------------------------


@_timed
def check_arithmetic(
    lam: DominantWeight, N: int, primes: Sequence[int] = DEFAULT_PRIMES, rational: bool = True
) -> CheckReport:
    """Slice ranks over each prime agree with each other and with Q."""
    primes = check_primes(primes)
    params = {"weight": _lam_str(lam), "N": N, "primes": list(primes), "rational": rational}
    ideal = ideal_generators_B2(lam, N)
    slices = 0
    for n in range(N + 1):
        ref = slice_ranks(ideal, n) if rational else None
        per_prime = [slice_ranks(ideal, n, p) for p in primes]
        if ref is None:
            ref = per_prime[0]
        for p, ranks in zip(primes, per_prime):
            for w in sorted(set(ref) | set(ranks)):
                if ref.get(w, 0) != ranks.get(w, 0):
                    mm = {"weight": list(w), "degree": n, "reference": ref.get(w, 0),
                          f"mod {p}": ranks.get(w, 0)}
                    return CheckReport("arithmetic", params, FAIL, {"slices": slices}, mm)
        slices += len(ref)
    return CheckReport("arithmetic", params, PASS, {"slices": slices})


@_timed
def check_negative_controls(lam: DominantWeight, N: int, k: int = 1) -> CheckReport:
    """The checks must detect a dropped generator and an injected DC violation."""
    params = {"weight": _lam_str(lam), "N": N, "level": k}
    ideal = ideal_generators_B2(lam, N)
    # the lowest-degree generator cannot be produced by the others in its degree
    index = min(range(len(ideal.generators)), key=lambda i: (ideal.generators[i].degree, i))
    dropped = check_W_basis(lam, N, ideal=ideal.without(index))
    cells = {"dropped_generator": index, "dropped_status": dropped.status,
             "dropped_mismatch": dropped.mismatch}
    table = {1: [0, 0, k + 1]}
    injected = ColoredPartition.from_dict(table)
    detected = (not satisfies_dc(injected, k)) and find_leading_term_divisor(injected, k) is not None
    cells["injected"] = str(injected)
    cells["injected_detected"] = detected
    ok = dropped.status == FAIL and dropped.mismatch is not None and detected
    return CheckReport("negative-controls", params, PASS if ok else FAIL, cells)


# --- findings ---------------------------------------------------------------

def QUOTED_RELATION_MODULE_DIM(k: int) -> int:
    # size quoted in the literature for the g_0-module of relations
    # spanned by the coefficients of x_theta(z)^{k+1}
    return 2 * k + 1


@_timed
def check_closure_dimensions(levels: Sequence[int] = (1, 2), max_degree: int = 8) -> CheckReport:
    """Observed dimension of each relation module, per (k, n), for B2 and A1."""
    params = {"levels": list(levels), "max_degree": max_degree}
    observed: Dict[str, Dict[str, int]] = {}
    differs = []
    inconsistent = []
    for k in levels:
        for ring in (B2_RING, A1_RING):
            row = {}
            for n in range(-k - 1, -max_degree - 1, -1):
                row[str(n)] = closure_dimension(k, n, ring)
            observed[f"{ring.name} k={k}"] = row
            values = set(row.values())
            if len(values) > 1:
                inconsistent.append(f"{ring.name} k={k}")
            quoted = QUOTED_RELATION_MODULE_DIM(k)
            for n, dim in row.items():
                if dim != quoted:
                    differs.append(f"{ring.name} k={k} n={n}: observed {dim}, quoted {quoted}")
    cells = {"observed": observed, "quoted": {str(k): QUOTED_RELATION_MODULE_DIM(k) for k in levels}}
    if inconsistent:
        return CheckReport("closure-dimension", params, FAIL, cells,
                           {"reason": f"dimension depends on n for {inconsistent}"})
    status = FINDING if differs else PASS
    notes = differs[:4] + ([f"... {len(differs) - 4} more"] if len(differs) > 4 else [])
    return CheckReport("closure-dimension", params, status, cells, notes=notes)


@_timed
def check_pivots(lam: DominantWeight, N: int) -> CheckReport:
    """Pivot monomials of every slice are exactly the non-admissible monomials.

    A disagreement means the chosen monomial order does not reproduce the
    leading-term list; it is reported as a finding since only dimensions
    are normative.
    """
    params = {"weight": _lam_str(lam), "N": N}
    ideal = ideal_generators_B2(lam, N)
    k = lam.level
    bad = []
    checked = 0
    for n in range(N + 1):
        for ech in slice_echelons(ideal, n):
            for mono in ech.monomials:
                pi = partition_from_mono(mono)
                checked += 1
                if (mono in ech.pivots) == is_admissible(pi, lam):
                    bad.append(str(pi))
    cells = {"monomials": checked, "disagreements": len(bad)}
    if bad:
        return CheckReport("pivots", params, FINDING, cells, {"examples": bad[:5]})
    return CheckReport("pivots", params, PASS, cells)


# --- suites -----------------------------------------------------------------

CHECK_NAMES = ("w-basis", "a1-coincidence", "sl2-bases", "semi-infinite", "leading-terms")
EXTRA_CHECKS = ("arithmetic", "negative-controls", "closure-dimension", "pivots")


def plan_checks(
    name: str,
    level: Optional[int] = None,
    weight: Optional[Sequence[int]] = None,
    degree: Optional[int] = None,
    arith: str = "rational",
    primes: Sequence[int] = DEFAULT_PRIMES,
    seed: int = 0,
    sample: int = 10_000,
) -> List[Tuple[Callable[..., CheckReport], tuple, dict]]:
    """Expand a check name and options into concrete (function, args, kwargs) jobs."""
    jobs: List[Tuple[Callable[..., CheckReport], tuple, dict]] = []
    names = CHECK_NAMES + EXTRA_CHECKS if name == "all" else (name,)
    levels = [level] if level is not None else [1, 2]
    for nm in names:
        if nm == "w-basis":
            lams = [DominantWeight(*weight)] if weight else [
                lam for k in levels for lam in dominant_weights(k)
            ]
            for lam in lams:
                N = degree if degree is not None else (8 if lam.level == 1 else 6)
                jobs.append((check_W_basis, (lam, N), {"arith": arith, "primes": tuple(primes)}))
        elif nm == "a1-coincidence":
            for k in levels:
                N = degree if degree is not None else 6
                jobs.append((check_A1_coincidence, (k, N), {"arith": arith, "primes": tuple(primes)}))
        elif nm == "sl2-bases":
            if weight:
                lams = [tuple(weight)]
            else:
                lams = [(k0, k - k0) for k in levels for k0 in range(k, -1, -1)]
            for lam in lams:
                jobs.append((check_sl2_monomial_bases, (lam, degree if degree is not None else 6), {}))
        elif nm == "semi-infinite":
            lams = [DominantWeight(*weight)] if weight else [
                lam for lam in dominant_weights(level if level is not None else 1)
            ]
            for lam in lams:
                jobs.append((check_semi_infinite, (lam, degree if degree is not None else 4), {}))
        elif nm == "leading-terms":
            for k in levels:
                jobs.append((check_leading_terms, (k,), {"seed": seed, "sample": sample}))
        elif nm == "arithmetic":
            lams = [DominantWeight(*weight)] if weight else dominant_weights(levels[0])
            for lam in lams:
                N = degree if degree is not None else (8 if lam.level == 1 else 6)
                jobs.append((check_arithmetic, (lam, N), {"primes": tuple(primes)}))
        elif nm == "negative-controls":
            lam = DominantWeight(*weight) if weight else DominantWeight(levels[0], 0, 0)
            jobs.append((check_negative_controls, (lam, degree if degree is not None else 4), {"k": lam.level}))
        elif nm == "closure-dimension":
            jobs.append((check_closure_dimensions, (tuple(levels),), {}))
        elif nm == "pivots":
            lams = [DominantWeight(*weight)] if weight else [
                lam for k in levels for lam in dominant_weights(k)
            ]
            for lam in lams:
                jobs.append((check_pivots, (lam, degree if degree is not None else 6), {}))
        else:
            raise ValueError(f"unknown check {nm!r}")
    return jobs


def _run_job(job) -> CheckReport:
    fn, args, kwargs = job
    return fn(*args, **kwargs)


def run_jobs(jobs, workers: int = 1, cache: Optional[ResultCache] = None) -> List[CheckReport]:
    """Run jobs, in parallel if asked; results come back in job order."""
    if cache is not None:
        jobs = [
            (fn, args, dict(kwargs, cache=cache)) if fn in _CACHE_AWARE else (fn, args, kwargs)
            for fn, args, kwargs in jobs
        ]
    if workers <= 1 or len(jobs) <= 1:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs))


_CACHE_AWARE = (check_W_basis, check_A1_coincidence, check_semi_infinite)


def exit_status(reports: Sequence[CheckReport]) -> int:
    """0 all pass (findings allowed), 2 mismatch, 3 resource limit / no stabilisation."""
    if any(r.status == FAIL for r in reports):
        return 2
    if any(r.status in (RESOURCE, UNSTABLE) for r in reports):
        return 3
    return 0

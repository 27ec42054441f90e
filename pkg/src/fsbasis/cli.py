"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 mismatch, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional, Sequence

from .cache import CACHE_ENV, ResultCache
from .characters import DATA, weight_multiplicities
from .counts import WeightedCount
from .linalg import DEFAULT_PRIMES, check_primes
from .partitions import (
    DominantWeight,
    admissible_counts,
    enumerate_admissible,
    enumerate_sl2_partitions,
    sl2_counts,
)
from .presentation import (
    DEFAULT_BUDGET,
    ResourceLimitError,
    graded_quotient_dims,
    ideal_generators_A1,
    ideal_generators_B2,
)
from .verify import CHECK_NAMES, EXTRA_CHECKS, exit_status, plan_checks, run_jobs

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _weight(args) -> List[int]:
    if args.weight is None:
        if getattr(args, "level", None) is None:
            raise UsageError("give --weight or --level")
        return [args.level, 0, 0] if args.type == "b2" else [args.level, 0]
    w = _int_list(args.weight)
    size = 3 if args.type == "b2" else 2
    if len(w) != size or min(w) < 0 or sum(w) < 1:
        raise UsageError(f"--weight for {args.type} needs {size} nonnegative labels of positive sum")
    return w


def _primes(args) -> List[int]:
    primes = _int_list(args.primes) if args.primes else list(DEFAULT_PRIMES)
    try:
        return check_primes(primes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cache(args) -> Optional[ResultCache]:
    if getattr(args, "no_cache", False):
        return None
    if args.cache_dir:
        return ResultCache(args.cache_dir)
    if os.environ.get(CACHE_ENV):
        return ResultCache()
    return None


def _degree_range(args) -> range:
    if args.degree < 0:
        raise UsageError("--degree must be nonnegative")
    return range(0 if args.cumulative else args.degree, args.degree + 1)


# --- output -------------------------------------------------------------------


def format_table(table: WeightedCount, fmt: str, weighted: bool) -> str:
    """Render a table; rows by degree ascending, then weights in lex order."""
    if not weighted:
        table = table.forget_weights()
    if fmt == "json":
        return json.dumps(table.to_records(), sort_keys=True) + "\n"
    rows = []
    for (w, d), n in table.items():
        rows.append([d, *w, n] if weighted else [d, n])
    width = max((len(w) for w in table.weights()), default=0)
    header = ["degree", *[f"w{i + 1}" for i in range(width)], "mult"] if weighted else ["degree", "count"]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    cols = [header] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    return "".join(
        "  ".join(x.rjust(wd) for x, wd in zip(r, widths)) + "\n" for r in cols
    )


def _select(table: WeightedCount, degrees: range) -> WeightedCount:
    return WeightedCount({c: n for c, n in table.items() if c[1] in degrees})


# --- commands -------------------------------------------------------------------


def cmd_enumerate(args, out) -> int:
    w = _weight(args)
    degrees = _degree_range(args)
    if args.list:
        for n in degrees:
            if args.type == "b2":
                for pi in enumerate_admissible(DominantWeight(*w), n):
                    out.write(pi.to_json() + "\n")
            else:
                for pi in enumerate_sl2_partitions(w[0], w[1], n):
                    exps = {str(j): list(t) for j, t in enumerate(pi.exps) if any(t)}
                    out.write(json.dumps({"exponents": exps}, sort_keys=True) + "\n")
        return EXIT_OK
    if args.type == "b2":
        table = admissible_counts(DominantWeight(*w), args.degree)
    else:
        table = sl2_counts(tuple(w), args.degree)
    out.write(_render(_select(table, degrees), degrees, args))
    return EXIT_OK


def _render(table: WeightedCount, degrees: range, args) -> str:
    if not args.weighted:
        # every requested degree gets a row, even when it is zero
        totals = WeightedCount()
        for (_, d), n in table.items():
            totals.add((), d, n)
        if args.format == "json":
            recs = [{"weight": [], "degree": d, "mult": totals.total(d)} for d in degrees]
            return json.dumps(recs, sort_keys=True) + "\n"
        rows = [[d, totals.total(d)] for d in degrees]
        if args.format == "csv":
            return "degree,count\n" + "".join(f"{d},{n}\n" for d, n in rows)
        width = max(len("degree"), *(len(str(d)) for d in degrees))
        cw = max(len("count"), *(len(str(n)) for _, n in rows))
        lines = ["degree".rjust(width) + "  " + "count".rjust(cw)]
        lines += [str(d).rjust(width) + "  " + str(n).rjust(cw) for d, n in rows]
        return "\n".join(lines) + "\n"
    return format_table(table, args.format, True)


def cmd_dims(args, out) -> int:
    w = _weight(args)
    degrees = _degree_range(args)
    N = args.degree
    if args.type == "a1" and w[1] != 0:
        raise UsageError("the A1 presentation covers k*Lambda0 only (--weight k,0)")
    if N < 1:
        # nothing to eliminate: the degree-0 piece is spanned by 1
        table = WeightedCount({((0,) * (2 if args.type == "b2" else 1), 0): 1})
        out.write(_render(table, degrees, args))
        return EXIT_OK
    if args.type == "b2":
        ideal = ideal_generators_B2(DominantWeight(*w), N)
    else:
        ideal = ideal_generators_A1(w[0], N)
    moduli: List[Optional[int]] = []
    if args.arith in ("rational", "both"):
        moduli.append(None)
    if args.arith in ("modular", "both"):
        moduli.extend(_primes(args))
    cache = _cache(args)
    tables = []
    for p in moduli:
        try:
            tables.append(graded_quotient_dims(ideal, N, True, p, args.budget, cache))
        except ResourceLimitError as exc:
            print(f"resource limit: {exc}", file=sys.stderr)
            if exc.partial is not None:
                out.write(_render(_select(exc.partial, degrees), degrees, args))
            return EXIT_RESOURCE
    for p, t in zip(moduli[1:], tables[1:]):
        mm = tables[0].first_mismatch(t)
        if mm is not None:
            print(f"arithmetic mismatch between {moduli[0] or 'Q'} and {p}: {mm}", file=sys.stderr)
            return EXIT_MISMATCH
    out.write(_render(_select(tables[0], degrees), degrees, args))
    return EXIT_OK


def cmd_characters(args, out) -> int:
    w = _weight(args)
    degrees = _degree_range(args)
    datum = DATA["B2" if args.type == "b2" else "A1"]
    cache = _cache(args)
    if cache is not None:
        table = cache.cached(
            cache.key("character", datum.name, tuple(w), N=args.degree),
            lambda: weight_multiplicities(datum, tuple(w), args.degree),
            WeightedCount.to_records,
            WeightedCount.from_records,
        )
    else:
        table = weight_multiplicities(datum, tuple(w), args.degree)
    out.write(_render(_select(table, degrees), degrees, args))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    weight = None
    if args.weight is not None:
        weight = _int_list(args.weight)
        if len(weight) not in (2, 3) or min(weight) < 0 or sum(weight) < 1:
            raise UsageError("--weight needs 2 (sl2) or 3 (B2) nonnegative labels")
    if args.level is not None and args.level < 1:
        raise UsageError("--level must be positive")
    primes = _primes(args)
    try:
        jobs = plan_checks(
            args.check, args.level, weight, args.degree, args.arith, primes, args.seed, args.sample
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    reports = run_jobs(jobs, workers=args.jobs, cache=_cache(args))
    if args.format == "json":
        out.write(json.dumps([r.to_dict(args.timing) for r in reports], sort_keys=True) + "\n")
    else:
        for r in reports:
            out.write(r.summary() + "\n")
            for name, value in r.cells.items():
                if isinstance(value, list) and all(isinstance(x, int) for x in value):
                    out.write(f"    {name}: {', '.join(map(str, value))}\n")
            for note in r.notes:
                out.write(f"    note: {note}\n")
            if args.timing:
                out.write(f"    time: {r.timing:.3f}s\n")
    return exit_status(reports)


def cmd_cache(args, out) -> int:
    cache = ResultCache(args.cache_dir) if args.cache_dir else ResultCache()
    if args.action == "clear":
        out.write(f"removed {cache.clear()} entries from {cache.directory}\n")
    elif args.action == "path":
        out.write(f"{cache.directory}\n")
    else:
        entries = cache.entries()
        out.write(f"{cache.directory}: {len(entries)} entries\n")
        for e in entries:
            out.write(f"  {e}\n")
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fsbasis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, degree_default=None):
        p.add_argument("--type", choices=("b2", "a1"), default="b2")
        p.add_argument("--weight", help="Dynkin labels k0,k1,k2 (b2) or k0,k1 (a1)")
        p.add_argument("--level", type=int, help="shorthand for k*Lambda0")
        p.add_argument("--degree", type=int, required=degree_default is None, default=degree_default)
        p.add_argument("--cumulative", action="store_true", help="all degrees 0..N instead of N only")
        p.add_argument("--weighted", action="store_true", help="refine counts by finite weight")
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    def caching(p):
        p.add_argument("--cache-dir", help=f"result cache directory (default: ${CACHE_ENV}, else none)")
        p.add_argument("--no-cache", action="store_true")

    def arith(p):
        p.add_argument("--arith", choices=("rational", "modular", "both"), default="rational")
        p.add_argument("--primes", help="comma-separated primes > 2^30 for modular mode")

    p = sub.add_parser("enumerate", help="count or list admissible monomials")
    common(p)
    p.add_argument("--list", action="store_true", help="emit partitions as JSON lines")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dims", help="graded dimensions of the presented quotient P/I")
    common(p)
    arith(p)
    caching(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max rows*columns per slice")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("characters", help="Weyl-Kac multiplicities of L(Lambda)")
    common(p)
    caching(p)
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("verify", help="run cross-checks")
    p.add_argument("--check", choices=CHECK_NAMES + EXTRA_CHECKS + ("all",), default="all")
    p.add_argument("--weight")
    p.add_argument("--level", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, default=10_000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")
    p.add_argument("--format", choices=("table", "json"), default="table")
    arith(p)
    caching(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", help="inspect or clear the result cache")
    p.add_argument("action", choices=("info", "clear", "path"), nargs="?", default="info")
    p.add_argument("--cache-dir")
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"fsbasis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()

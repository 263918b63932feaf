"""Command-line front end: ``binomap {solve,enumerate,incidence,bench,minors}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .decomp import decompose
from .enumerate import EnumerationOptions, NotBinomialError, enumerate_consistent, enumerate_covers
from .incidence import build_incidence, format_incidence
from .poly import ParseError, adjacent_minors, parse_system, serialize_system
from .toric import DEFAULT_BRANCH_LIMIT, BranchLimitError

EXIT_PARSE = 1
EXIT_NOT_BINOMIAL = 2
EXIT_BRANCH_LIMIT = 3
EXIT_MISMATCH = 4


@dataclass
class BenchRecord:
    n: int
    maps: int
    expected: int
    search_seconds: float

    @property
    def ok(self) -> bool:
        return self.maps == self.expected


def fibonacci(n: int) -> int:
    """F(1) = F(2) = 1, so F(3) = 2 is the component count of the 2x3 minors."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("BINOMAP_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _load(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None
    try:
        return parse_system(text)
    except (ParseError, ValueError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def _options(args) -> EnumerationOptions:
    return EnumerationOptions(
        pure_dim=getattr(args, "pure_dim", False),
        covers_only=getattr(args, "covers_only", False),
        max_size=getattr(args, "max_size", None),
    )


def cmd_solve(args) -> int:
    system = _load(args.path)
    if system is None:
        return EXIT_PARSE
    if not system.equations:
        print(f"error: {args.path}: no equations", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = decompose(system, _options(args), tol=args.tol, seed=args.seed,
                           samples=args.samples, branch_limit=args.branch_limit,
                           threads=_threads(args))
    except NotBinomialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_BINOMIAL
    except BranchLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BRANCH_LIMIT
    if args.json:
        print(json.dumps(result.to_dict(), indent=2))
        return 0
    names = system.vars.names
    print(f"{len(result)} monomial map(s)")
    for i, mmap in enumerate(result.maps, 1):
        zeros = " ".join(names[k] for k in mmap.zero_set) or "-"
        print(f"map {i}: dim {mmap.d}, zero: {zeros}")
        print(mmap.describe())
    st = result.stats
    print(f"selections {st.selections}, inconsistent {st.inconsistent}, "
          f"contained {st.contained}, unverified {st.unverified}, {st.seconds:.3f}s")
    return 0


def cmd_enumerate(args) -> int:
    system = _load(args.path)
    if system is None:
        return EXIT_PARSE
    M = build_incidence(system)
    opts = _options(args)
    if opts.covers_only:
        found = enumerate_covers(M, opts)
    else:
        try:
            found = enumerate_consistent(system, M, opts, threads=_threads(args))
        except NotBinomialError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NOT_BINOMIAL
    names = system.vars.names
    if args.json:
        print(json.dumps([[names[k] for k in S] for S in found]))
    else:
        for S in found:
            print(" ".join(names[k] for k in S))
    return 0


def cmd_incidence(args) -> int:
    system = _load(args.path)
    if system is None:
        return EXIT_PARSE
    M = build_incidence(system)
    if args.json:
        names = system.vars.names
        print(json.dumps({
            "cols": [names[k] for k in M.cols],
            "dropped": [names[k] for k in sorted(M.dropped)],
            "rows": [list(a) for a in M.monomials],
            "bits": M.dense(),
        }))
    else:
        print(format_incidence(system, M))
    return 0


def run_bench(min_n: int, max_n: int, threads: int = 1) -> list[BenchRecord]:
    records = []
    for n in range(min_n, max_n + 1):
        system = adjacent_minors(2, n)
        start = time.perf_counter()
        result = decompose(system, EnumerationOptions(pure_dim=True), threads=threads,
                           verify=False)
        elapsed = time.perf_counter() - start
        records.append(BenchRecord(n, len(result), fibonacci(n), elapsed))
    return records


def cmd_bench(args) -> int:
    if not 3 <= args.min_n <= args.max_n:
        print("error: need 3 <= MIN_N <= MAX_N", file=sys.stderr)
        return EXIT_PARSE
    records = []
    if args.csv:
        print("n,maps,expected,seconds")
    else:
        print(f"{'n':>3} {'#maps':>7} {'expected':>8} {'search':>9}")
    for n in range(args.min_n, args.max_n + 1):
        rec = run_bench(n, n, _threads(args))[0]
        records.append(rec)
        if args.csv:
            print(f"{rec.n},{rec.maps},{rec.expected},{rec.search_seconds:.3f}")
        else:
            flag = "" if rec.ok else "  MISMATCH"
            print(f"{rec.n:>3} {rec.maps:>7} {rec.expected:>8} {rec.search_seconds:>9.3f}{flag}")
        sys.stdout.flush()
    return 0 if all(r.ok for r in records) else EXIT_MISMATCH


def cmd_minors(args) -> int:
    print(serialize_system(adjacent_minors(args.m, args.n)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binomap",
                                     description="Monomial-map decomposition of binomial systems.")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $BINOMAP_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    p = sub.add_parser("solve", help="decompose a binomial system")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--pure-dim", action="store_true")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--branch-limit", type=int, default=DEFAULT_BRANCH_LIMIT)
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", help="list zero-variable selections")
    p.add_argument("path")
    p.add_argument("--covers-only", action="store_true")
    p.add_argument("--pure-dim", action="store_true")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--json", action="store_true")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("incidence", help="print the monomial/variable incidence matrix")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_incidence)

    p = sub.add_parser("bench", help="component counts for the 2-by-n adjacent minors")
    p.add_argument("min_n", type=int, nargs="?", default=3)
    p.add_argument("max_n", type=int, nargs="?", default=12)
    p.add_argument("--csv", action="store_true")
    common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("minors", help="write the adjacent 2x2 minors of an m-by-n matrix")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_minors)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_size", None) is not None and args.max_size < 0:
        print("error: --max-size must be non-negative", file=sys.stderr)
        return EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Enumeration of zero-variable selections by row expansion of the incidence matrix."""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .incidence import IncidenceMatrix, selection_mask
from .poly import PolynomialSystem

Selection = tuple[int, ...]


class NotBinomialError(ValueError):
    pass


class EquationStatus(enum.Enum):
    VANISHED = "vanished"
    RESIDUAL = "residual"
    MIXED = "mixed"


@dataclass(frozen=True)
class EnumerationOptions:
    pure_dim: bool = False
    covers_only: bool = False
    max_size: Optional[int] = None
    dedupe: bool = True

    def __post_init__(self):
        if self.max_size is not None and self.max_size < 0:
            raise ValueError("max_size must be non-negative")


@dataclass
class SearchStats:
    nodes: int = 0
    pruned: int = 0
    emitted: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.pruned += other.pruned
        self.emitted += other.emitted


def canonical(S: Iterable[int]) -> Selection:
    return tuple(sorted(set(S)))


def _members(mask: int) -> Selection:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def classify(sys: PolynomialSystem, M: IncidenceMatrix, S: Iterable[int]) -> list[EquationStatus]:
    mask = selection_mask(M, S)
    statuses = []
    for rows in M.term_row:
        hit = sum(1 for r in rows if M.bits[r] & mask)
        if hit == len(rows):
            statuses.append(EquationStatus.VANISHED)
        elif hit == 0:
            statuses.append(EquationStatus.RESIDUAL)
        else:
            statuses.append(EquationStatus.MIXED)
    return statuses


def greedy_row_order(M: IncidenceMatrix) -> list[int]:
    # fail-first: rows with fewest candidate columns are expanded first
    return sorted(range(M.nrows), key=lambda r: bin(M.bits[r]).count("1"))


def enumerate_covers(M: IncidenceMatrix, opts: EnumerationOptions = EnumerationOptions(),
                     stats: Optional[SearchStats] = None) -> list[Selection]:
    """All selections hitting every row, in depth-first order of the row expansion."""
    stats = stats if stats is not None else SearchStats()
    order = greedy_row_order(M)
    rows = [M.bits[r] for r in order]
    cols = [[k for k in M.cols if (b >> k) & 1] for b in rows]
    neq = len(M.term_row)
    limit = opts.max_size
    if opts.pure_dim:
        limit = neq if limit is None else min(limit, neq)
    out: list[Selection] = []
    path: list[int] = []

    def expand(p: int, mask: int) -> None:
        stats.nodes += 1
        if p == len(rows):
            if opts.pure_dim and len(path) != neq:
                stats.pruned += 1
                return
            out.append(canonical(path))
            stats.emitted += 1
            return
        if rows[p] & mask:
            expand(p + 1, mask)
            return
        for k in cols[p]:
            if limit is not None and len(path) + 1 > limit:
                stats.pruned += 1
                continue
            path.append(k)
            expand(p + 1, mask | (1 << k))
            path.pop()

    if rows:
        expand(0, 0)
    if opts.dedupe:
        seen = set()
        out = [S for S in out if not (S in seen or seen.add(S))]
    return out


class _ConsistentSearch:
    """Row expansion with an extra 'leave this row uncovered' branch.

    Branch i at a row forbids the row's earlier columns, so each selection is
    reached once: the branches partition selections by their smallest column
    in the row (or by having none in it).
    """

    def __init__(self, M: IncidenceMatrix, opts: EnumerationOptions,
                 include_redundant: bool = True):
        self.include_redundant = include_redundant
        self.active = sum(1 << k for k in M.cols)
        self.order = greedy_row_order(M)
        self.rows = [M.bits[r] for r in self.order]
        self.cols = [[k for k in M.cols if (b >> k) & 1] for b in self.rows]
        self.eq_bits = [tuple(M.bits[r] for r in rows) for rows in M.term_row]
        self.neq = len(self.eq_bits)
        self.pure_dim = opts.pure_dim
        limit = opts.max_size
        if opts.pure_dim:
            limit = self.neq if limit is None else min(limit, self.neq)
        self.limit = limit

    def admissible(self, mask: int, forbidden: int, size: int) -> bool:
        live = ~forbidden
        blocked = 0
        for a, b in self.eq_bits:
            ca, cb = a & mask, b & mask
            da, db = not (a & live), not (b & live)
            if (ca and db) or (cb and da):
                return False
            if da or db:
                blocked += 1
        if self.limit is not None and size > self.limit:
            return False
        if self.pure_dim and size > self.neq - blocked:
            return False
        return True

    def vanished(self, mask: int) -> int:
        return sum(1 for a, b in self.eq_bits if a & mask and b & mask)

    def add_redundant(self, mask: int, forbidden: int, size: int,
                      out: set[int], stats: SearchStats, exact: int | None = None) -> None:
        # every row is covered or dead here, so the remaining columns only
        # touch covered rows and may be zeroed without changing any status
        spare = _members(self.active & ~forbidden & ~mask)
        room = len(spare) if self.limit is None else min(len(spare), self.limit - size)
        sizes = range(1, room + 1) if exact is None else [exact] if exact <= room else []
        for r in sizes:
            for extra in combinations(spare, r):
                m = mask
                for k in extra:
                    m |= 1 << k
                out.add(m)
                stats.emitted += 1

    def children(self, p: int, mask: int, forbidden: int, size: int):
        row = self.rows[p]
        taken = 0
        for k in self.cols[p]:
            bit = 1 << k
            if forbidden & bit:
                continue
            yield mask | bit, forbidden | taken, size + 1
            taken |= bit
        yield mask, forbidden | row, size

    def run(self, p: int, mask: int, forbidden: int, size: int,
            out: set[int], stats: SearchStats) -> None:
        rows = self.rows
        stats.nodes += 1
        while p < len(rows) and (rows[p] & mask or not rows[p] & ~forbidden):
            p += 1
        if p == len(rows):
            if self.pure_dim:
                # spare zeros leave every status unchanged, so they can only
                # make up a shortfall of zeros against vanished equations
                short = self.vanished(mask) - size
                if short < 0:
                    stats.pruned += 1
                    return
                self.add_redundant(mask, forbidden, size, out, stats, exact=short)
                return
            out.add(mask)
            stats.emitted += 1
            if self.include_redundant:
                self.add_redundant(mask, forbidden, size, out, stats)
            return
        for m2, f2, s2 in self.children(p, mask, forbidden, size):
            if self.admissible(m2, f2, s2):
                self.run(p + 1, m2, f2, s2, out, stats)
            else:
                stats.pruned += 1


def enumerate_consistent(sys: PolynomialSystem, M: IncidenceMatrix,
                         opts: EnumerationOptions = EnumerationOptions(),
                         threads: int = 1,
                         stats: Optional[SearchStats] = None,
                         include_redundant: bool = True) -> list[Selection]:
    """All selections leaving no equation half-vanished, sorted by size then lexicographically.

    With ``include_redundant=False`` a selection is skipped when it only adds
    zeros on variables whose monomials are already killed by the rest; such a
    selection parametrizes a subset of the smaller one's solutions.
    """
    if not sys.is_binomial:
        raise NotBinomialError("consistent enumeration needs every equation to have two terms")
    stats = stats if stats is not None else SearchStats()
    search = _ConsistentSearch(M, opts, include_redundant)
    found: set[int] = set()

    if threads <= 1 or not search.rows:
        search.run(0, 0, 0, 0, found, stats)
    else:
        # split on the first row that needs a decision
        p = 0
        while p < len(search.rows) and not search.rows[p]:
            p += 1
        if p == len(search.rows):
            search.run(0, 0, 0, 0, found, stats)
        else:
            stats.nodes += 1
            tasks = []
            for m2, f2, s2 in search.children(p, 0, 0, 0):
                if search.admissible(m2, f2, s2):
                    tasks.append((m2, f2, s2))
                else:
                    stats.pruned += 1

            def work(task):
                local_out: set[int] = set()
                local_stats = SearchStats()
                search.run(p + 1, *task, local_out, local_stats)
                return local_out, local_stats

            with ThreadPoolExecutor(max_workers=threads) as pool:
                for local_out, local_stats in pool.map(work, tasks):
                    found |= local_out
                    stats.merge(local_stats)

    return sorted((_members(m) for m in found), key=lambda S: (len(S), S))

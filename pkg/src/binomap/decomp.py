"""End-to-end decomposition of a binomial system into monomial maps."""
from __future__ import annotations

import cmath
import functools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .enumerate import (EnumerationOptions, NotBinomialError, SearchStats, Selection,
                        enumerate_consistent)
from .incidence import build_incidence
from .lattice import IntMatrix, kernel_lattice, rank
from .poly import PolynomialSystem
from .toric import DEFAULT_BRANCH_LIMIT, MonomialMap, toric_maps, verify_map

COEFF_RTOL = 1e-10


@dataclass
class DecompositionStats:
    selections: int = 0
    nodes: int = 0
    pruned: int = 0
    inconsistent: int = 0
    branches: int = 0
    contained: int = 0
    unverified: int = 0
    seconds: float = 0.0

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "selections": self.selections,
            "nodes": self.nodes,
            "pruned": self.pruned,
            "inconsistent": self.inconsistent,
            "branches": self.branches,
            "contained": self.contained,
            "unverified": self.unverified,
        }
        if timing:
            out["seconds"] = self.seconds
        return out


@dataclass
class Decomposition:
    system: PolynomialSystem
    maps: list[MonomialMap]
    provenance: list[tuple[Selection, int]]
    stats: DecompositionStats = field(default_factory=DecompositionStats)

    def __len__(self) -> int:
        return len(self.maps)

    def to_dict(self, timing: bool = False) -> dict:
        names = self.system.vars.names
        maps = []
        for mmap in self.maps:
            maps.append({
                "zero": [names[k] for k in mmap.zero_set],
                "free": [names[k] for k in mmap.free_set],
                "dim": mmap.d,
                "coeff": {names[k]: [c.real, c.imag] for k, c in enumerate(mmap.coeffs)},
                "exponents": {names[k]: list(mmap.column(k)) for k in range(mmap.nvars)},
            })
        return {"count": len(maps), "stats": self.stats.as_dict(timing), "maps": maps}


def lattice_relations(mmap: MonomialMap) -> IntMatrix:
    """Integer vectors w (one per variable, zero on zeroed variables) with ``x^w`` constant on the map."""
    support = mmap.nonzero
    cols = [[row[k] for k in support] for row in mmap.exponents]
    basis = kernel_lattice(cols, len(support)) if cols else kernel_lattice([], len(support))
    out = []
    for w in basis:
        full = [0] * mmap.nvars
        for k, v in zip(support, w):
            full[k] = v
        out.append(full)
    return out


@functools.lru_cache(maxsize=4096)
def _image_dimension(mmap: MonomialMap) -> int:
    return rank([list(r) for r in mmap.exponents]) if mmap.exponents else 0


def _coeff_power(coeffs, w) -> complex:
    v = 1 + 0j
    for c, e in zip(coeffs, w):
        if e:
            v *= c ** e
    return v


def _degenerates_to(outer: MonomialMap, support: set[int]) -> bool:
    """Whether the closure of the outer image has points whose support is exactly ``support``.

    Needs a one-parameter subgroup ``lam`` with ``<lam, v_k> = 0`` on the
    support and ``> 0`` on the other nonzero coordinates of the outer map.
    Feasible LP answers are re-checked exactly on a rational rounding; a
    failed check counts as infeasible so containment errs towards keeping maps.
    """
    leaving = [k for k in outer.nonzero if k not in support]
    if not leaving:
        return True
    d = outer.d
    if d == 0:
        return False
    cols = {k: outer.column(k) for k in outer.nonzero}
    A_eq = [cols[k] for k in outer.nonzero if k in support]
    A_ub = [[-v for v in cols[k]] for k in leaving]
    result = linprog(
        c=np.zeros(d),
        A_ub=np.array(A_ub, dtype=float),
        b_ub=-np.ones(len(leaving)),
        A_eq=np.array(A_eq, dtype=float) if A_eq else None,
        b_eq=np.zeros(len(A_eq)) if A_eq else None,
        bounds=[(None, None)] * d,
        method="highs",
    )
    if result.status != 0:
        return False
    lam = [Fraction(v).limit_denominator(10**6) for v in result.x]

    def dot(col):
        return sum(l * v for l, v in zip(lam, col))

    return (all(dot(cols[k]) == 0 for k in outer.nonzero if k in support)
            and all(dot(cols[k]) > 0 for k in leaving))


def contains(outer: MonomialMap, inner: MonomialMap) -> bool:
    """Whether the image of ``inner`` lies in the closure of the image of ``outer``."""
    if outer.names != inner.names:
        raise ValueError("maps are over different variables")
    if not set(outer.zero_set) <= set(inner.zero_set):
        return False
    if outer.zero_set != inner.zero_set and _image_dimension(inner) >= _image_dimension(outer):
        # a proper closed subset of an irreducible image has smaller dimension
        return False
    support = set(inner.nonzero)
    if not _degenerates_to(outer, support):
        return False
    keep = [k for k in outer.nonzero if k in support]
    cols = [[row[k] for k in keep] for row in outer.exponents]
    relations = kernel_lattice(cols, len(keep)) if cols else kernel_lattice([], len(keep))
    for w in relations:
        for row in inner.exponents:
            if sum(row[k] * e for k, e in zip(keep, w)):
                return False
        ci = _coeff_power([inner.coeffs[k] for k in keep], w)
        co = _coeff_power([outer.coeffs[k] for k in keep], w)
        if abs(ci - co) > COEFF_RTOL * max(1.0, abs(co)):
            return False
    return True


def canonical_key(mmap: MonomialMap):
    angles = tuple(round(cmath.phase(c), 9) if c != 0 else 0.0 for c in mmap.coeffs)
    return (len(mmap.zero_set), mmap.zero_set, angles)


def filter_contained(maps: list[MonomialMap]) -> list[int]:
    """Indices of maps not contained in any other; of two equal images the smaller key survives."""
    keys = [canonical_key(m) for m in maps]
    keep = []
    for i, inner in enumerate(maps):
        redundant = False
        for j, outer in enumerate(maps):
            if i == j or not contains(outer, inner):
                continue
            if contains(inner, outer) and (keys[i], i) < (keys[j], j):
                continue
            redundant = True
            break
        if not redundant:
            keep.append(i)
    return keep


def decompose(sys: PolynomialSystem, opts: EnumerationOptions = EnumerationOptions(),
              tol: float = 1e-8, seed: int = 42, samples: int = 10,
              branch_limit: int = DEFAULT_BRANCH_LIMIT, threads: int = 1,
              verify: bool = True) -> Decomposition:
    """Decompose the affine solution set of a binomial system into monomial maps."""
    if not sys.is_binomial:
        raise NotBinomialError("every equation must have exactly two terms")
    start = time.perf_counter()
    stats = DecompositionStats()
    M = build_incidence(sys)
    search = SearchStats()
    selections = enumerate_consistent(sys, M, opts, threads=threads, stats=search,
                                      include_redundant=False)
    stats.selections = len(selections)
    stats.nodes = search.nodes
    stats.pruned = search.pruned

    def solve(S):
        return toric_maps(sys, M, S, branch_limit)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            solved = list(pool.map(solve, selections))
    else:
        solved = [solve(S) for S in selections]

    maps, provenance = [], []
    for S, branch_maps in zip(selections, solved):
        if not branch_maps:
            stats.inconsistent += 1
        for b, mmap in enumerate(branch_maps):
            stats.branches += 1
            maps.append(mmap)
            provenance.append((S, b))

    keep = filter_contained(maps)
    stats.contained = len(maps) - len(keep)
    maps = [maps[i] for i in keep]
    provenance = [provenance[i] for i in keep]

    order = sorted(range(len(maps)), key=lambda i: canonical_key(maps[i]))
    maps = [maps[i] for i in order]
    provenance = [provenance[i] for i in order]

    if verify:
        stats.unverified = sum(
            1 for m in maps if not verify_map(sys, m, samples=samples, tol=tol, seed=seed))
    stats.seconds = time.perf_counter() - start
    return Decomposition(sys, maps, provenance, stats)

"""Toric solving of the residual binomials of a selection and monomial-map assembly."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .enumerate import EquationStatus, NotBinomialError, Selection, canonical, classify
from .incidence import IncidenceMatrix
from .lattice import IntMatrix, column_hermite, hnf, kernel_lattice
from .poly import PolynomialSystem

DEFAULT_BRANCH_LIMIT = 64


class InconsistentSelectionError(ValueError):
    pass


class BranchLimitError(RuntimeError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"toric system has {count} branches, above the limit of {limit}")
        self.count = count
        self.limit = limit


@dataclass(frozen=True)
class ResidualSystem:
    linked_vars: tuple[int, ...]
    A: IntMatrix
    gamma: tuple[Fraction, ...]
    free_vars: tuple[int, ...]
    equations: tuple[int, ...]


@dataclass(frozen=True)
class MonomialMap:
    """``x_k = c_k * prod_i t_i ** v[i][k]``.

    ``exponents`` is stored parameter-major (``d`` rows, one column per
    variable); zeroed variables have ``c_k = 0`` and an all-zero column.
    """
    names: tuple[str, ...]
    zero_set: tuple[int, ...]
    free_set: tuple[int, ...]
    coeffs: tuple[complex, ...]
    exponents: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.exponents)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def nonzero(self) -> tuple[int, ...]:
        z = set(self.zero_set)
        return tuple(k for k in range(self.nvars) if k not in z)

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(row[k] for row in self.exponents)

    def evaluate(self, t: Sequence[complex]) -> list[complex]:
        out = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                out.append(0j)
                continue
            x = complex(c)
            for ti, row in zip(t, self.exponents):
                if row[k]:
                    x *= ti ** row[k]
            out.append(x)
        return out

    def describe(self) -> str:
        lines = []
        for k, name in enumerate(self.names):
            c = self.coeffs[k]
            if c == 0:
                lines.append(f"  {name} = 0")
                continue
            factors = []
            for i, row in enumerate(self.exponents):
                e = row[k]
                if e == 1:
                    factors.append(f"t{i + 1}")
                elif e:
                    factors.append(f"t{i + 1}^{e}")
            coeff = _format_complex(c)
            if not factors:
                lines.append(f"  {name} = {coeff}")
            elif coeff == "1":
                lines.append(f"  {name} = {'*'.join(factors)}")
            else:
                lines.append(f"  {name} = {coeff}*{'*'.join(factors)}")
        return "\n".join(lines)


def _format_complex(c: complex) -> str:
    re_, im = c.real, c.imag
    if abs(im) <= 1e-12 * max(1.0, abs(re_)):
        return f"{re_:.12g}"
    return f"({re_:.12g}{im:+.12g}j)"


def residual(sys: PolynomialSystem, M: IncidenceMatrix, S: Iterable[int]) -> ResidualSystem:
    """Binomials that survive zeroing S, as exponent differences over the linked variables."""
    S = canonical(S)
    statuses = classify(sys, M, S)
    if EquationStatus.MIXED in statuses:
        i = statuses.index(EquationStatus.MIXED)
        raise InconsistentSelectionError(f"equation {i} has exactly one vanishing term")
    kept = [i for i, st in enumerate(statuses) if st is EquationStatus.RESIDUAL]
    linked = set()
    for i in kept:
        poly = sys.equations[i]
        if len(poly) != 2:
            raise NotBinomialError(f"equation {i} does not have two terms")
        for term in poly:
            linked.update(k for k, e in enumerate(term.exponents) if e)
    linked_vars = tuple(sorted(linked))
    rows, gamma = [], []
    for i in kept:
        (ca, a), (cb, b) = [(t.coeff, t.exponents) for t in sys.equations[i]]
        rows.append([a[k] - b[k] for k in linked_vars])
        gamma.append(-cb / ca)
    zeroed = set(S)
    free = tuple(k for k in M.cols + tuple(sorted(M.dropped))
                 if k not in zeroed and k not in linked)
    return ResidualSystem(linked_vars, rows, tuple(gamma), tuple(sorted(free)), tuple(kept))


def _power(values: Sequence[Fraction], exps: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for v, e in zip(values, exps):
        if e:
            out *= v ** e
    return out


def _roots(z: complex, p: int) -> list[complex]:
    """All p-th roots of z, principal root first, then by increasing angle."""
    r = abs(z) ** (1.0 / p)
    base = cmath.phase(z) / p
    out = []
    for k in range(p):
        if p == 1:
            out.append(complex(z))
        else:
            out.append(cmath.rect(r, base + 2 * math.pi * k / p))
    return out


def branch_count(A: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    """Number of cosets of the identity component in ``{x : x^A = 1}``."""
    res = hnf(A, ncols)
    L, _, rho = column_hermite(res.H[:res.rank], ncols if not A else len(A[0]))
    return math.prod(L[i][i] for i in range(rho))


def solve_coefficients(A: Sequence[Sequence[int]], gamma: Sequence[Fraction],
                       branch_limit: int = DEFAULT_BRANCH_LIMIT,
                       ncols: int | None = None) -> list[tuple[complex, ...]]:
    """One particular torus solution of ``x^A = gamma`` per branch.

    Consistency is decided exactly; an inconsistent system gives ``[]``.
    Raises BranchLimitError when the number of branches exceeds the limit.
    """
    gamma = [Fraction(g) for g in gamma]
    if any(g == 0 for g in gamma):
        raise ValueError("right-hand sides must be nonzero")
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return [tuple(1 + 0j for _ in range(n))]
    res = hnf(A, n)
    for row in res.U[res.rank:]:
        if _power(gamma, row) != 1:
            return []
    rho = res.rank
    rhs = [_power(gamma, row) for row in res.U[:rho]]
    L, Q, _ = column_hermite(res.H[:rho], n)
    count = math.prod(L[i][i] for i in range(rho))
    if count > branch_limit:
        raise BranchLimitError(count, branch_limit)

    solutions: list[tuple[complex, ...]] = []

    def back_substitute(i: int, y: list[complex]) -> None:
        if i == rho:
            x = []
            for k in range(n):
                v = 1 + 0j
                for j in range(rho):
                    if Q[k][j]:
                        v *= y[j] ** Q[k][j]
                x.append(v)
            solutions.append(tuple(x))
            return
        target = complex(rhs[i])
        for j in range(i):
            if L[i][j]:
                target /= y[j] ** L[i][j]
        for root in _roots(target, L[i][i]):
            y.append(root)
            back_substitute(i + 1, y)
            y.pop()

    back_substitute(0, [])
    return solutions


def build_map(names: Sequence[str], S: Selection, res: ResidualSystem,
              V: Sequence[Sequence[int]], particular: Sequence[complex]) -> MonomialMap:
    """Assemble the map: free variables first (one fresh parameter each), then kernel parameters."""
    n = len(names)
    if len(particular) != len(res.linked_vars):
        raise ValueError("particular solution does not match linked variables")
    if any(len(row) != len(res.linked_vars) for row in V):
        raise ValueError("kernel basis does not match linked variables")
    d = len(res.free_vars) + len(V)
    coeffs = [0j] * n
    exps = [[0] * n for _ in range(d)]
    for i, k in enumerate(res.free_vars):
        coeffs[k] = 1 + 0j
        exps[i][k] = 1
    offset = len(res.free_vars)
    for j, k in enumerate(res.linked_vars):
        coeffs[k] = complex(particular[j])
        for i, row in enumerate(V):
            exps[offset + i][k] = row[j]
    zero = canonical(S)
    if set(zero) & (set(res.free_vars) | set(res.linked_vars)):
        raise ValueError("zeroed variables overlap free or linked variables")
    return MonomialMap(
        names=tuple(names),
        zero_set=zero,
        free_set=tuple(res.free_vars),
        coeffs=tuple(_clean(c) for c in coeffs),
        exponents=tuple(tuple(r) for r in exps),
    )


def _clean(c: complex) -> complex:
    # drop rounding residue of roots of unity and signed zeros
    eps = 1e-14 * abs(c)
    re_ = 0.0 if abs(c.real) <= eps else c.real
    im = 0.0 if abs(c.imag) <= eps else c.imag
    return complex(re_ + 0.0, im + 0.0)


def toric_maps(sys: PolynomialSystem, M: IncidenceMatrix, S: Iterable[int],
               branch_limit: int = DEFAULT_BRANCH_LIMIT) -> list[MonomialMap]:
    """All monomial maps (one per branch) of the toric part left by S; [] if inconsistent."""
    S = canonical(S)
    res = residual(sys, M, S)
    V = kernel_lattice(res.A, len(res.linked_vars))
    particulars = solve_coefficients(res.A, res.gamma, branch_limit, len(res.linked_vars))
    return [build_map(sys.vars.names, S, res, V, x) for x in particulars]


def sample_parameters(d: int, rng: np.random.Generator) -> list[complex]:
    moduli = rng.uniform(0.5, 2.0, size=d)
    angles = rng.uniform(0.0, 2 * math.pi, size=d)
    return [complex(cmath.rect(r, a)) for r, a in zip(moduli, angles)]


def verify_map(sys: PolynomialSystem, mmap: MonomialMap, samples: int = 10,
               tol: float = 1e-8, seed: int | None = 42) -> bool:
    """Check numerically that the map parametrizes solutions of the system."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = mmap.evaluate(sample_parameters(mmap.d, rng))
        for poly in sys.equations:
            total = 0j
            scale = 0.0
            for term in poly:
                v = complex(term.coeff)
                for xk, e in zip(x, term.exponents):
                    if e:
                        if xk == 0:
                            if e < 0:
                                return False
                            v = 0j
                            break
                        v *= xk ** e
                total += v
                scale = max(scale, abs(v))
            if abs(total) > tol * (1.0 + scale):
                return False
    return True

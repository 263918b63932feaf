"""Exact integer lattice algebra: Hermite normal form and integer kernels.

Matrices are plain lists of lists of Python ints (arbitrary precision).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class HNFResult:
    """Row-style Hermite form ``H = U @ A`` with ``U`` unimodular."""
    H: IntMatrix
    U: IntMatrix
    rank: int

    @property
    def pivots(self) -> list[int]:
        """Column index of the pivot in each nonzero row."""
        out = []
        for row in self.H[:self.rank]:
            out.append(next(j for j, v in enumerate(row) if v))
        return out


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    Bt = list(zip(*B)) if B else []
    ncols = len(B[0]) if B else 0
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] if Bt else [0] * ncols
            for row in A]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _row_sub(dst: list[int], src: list[int], q: int) -> None:
    for j, v in enumerate(src):
        if v:
            dst[j] -= q * v


def hnf(A: Sequence[Sequence[int]], ncols: int | None = None) -> HNFResult:
    """Row-style Hermite normal form.

    Nonzero rows come first with strictly increasing pivot columns, pivots are
    positive and every entry above a pivot lies in ``[0, pivot)``.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    H = [list(map(int, row)) for row in A]
    U = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][j]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][j]), i))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // H[r][j]
                    _row_sub(H[i], H[r], q)
                    _row_sub(U[i], U[r], q)
                    if H[i][j]:
                        clean = False
            if clean:
                break
        if not H[r][j]:
            continue
        if H[r][j] < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
        piv = H[r][j]
        for i in range(r):
            q = H[i][j] // piv
            if q:
                _row_sub(H[i], H[r], q)
                _row_sub(U[i], U[r], q)
        r += 1
    return HNFResult(H, U, r)


def rank(A: Sequence[Sequence[int]]) -> int:
    return hnf(A).rank if A else 0


def kernel_lattice(A: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Canonical basis (rows) of the integer kernel ``{v : A v = 0}``.

    The basis is the Hermite form of the saturated kernel lattice, so its rows
    are primitive and the result depends only on the lattice.
    """
    n = len(A[0]) if A else (ncols or 0)
    if n == 0:
        return []
    if not A:
        return identity(n)
    res = hnf(transpose(A), len(A))
    basis = res.U[res.rank:]
    if not basis:
        return []
    return hnf(basis).H


def column_hermite(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Lower-triangular form by unimodular column operations.

    Returns ``(L, Q, rank)`` with ``A @ Q`` equal to ``L`` padded by zero
    columns; ``L`` is the ``rows x rank`` left block.
    """
    n = len(A[0]) if A else (ncols or 0)
    res = hnf(transpose(A, n), len(A))
    Q = transpose(res.U, n)
    L = transpose([row for row in res.H[:res.rank]], len(A)) if res.rank else [[] for _ in A]
    return L, Q, res.rank

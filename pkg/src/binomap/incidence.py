"""Monomial/variable incidence matrix and cover predicates."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .poly import PolynomialSystem


@dataclass(frozen=True)
class IncidenceMatrix:
    """One row per distinct monomial, one column per variable without negative exponents.

    ``bits[r]`` is an integer bitmask over *variable indices* (bit k set iff the
    row monomial has a positive exponent in variable k), so selections can be
    tested with a single ``&``.
    """
    monomials: tuple[tuple[int, ...], ...]
    origins: tuple[tuple[tuple[int, int], ...], ...]
    cols: tuple[int, ...]
    dropped: frozenset[int]
    bits: tuple[int, ...]
    term_row: tuple[tuple[int, ...], ...]
    nvars: int

    @property
    def nrows(self) -> int:
        return len(self.monomials)

    def dense(self) -> list[list[int]]:
        """0/1 matrix, rows x active columns."""
        return [[(b >> k) & 1 for k in self.cols] for b in self.bits]

    def row_columns(self, row: int) -> list[int]:
        b = self.bits[row]
        return [k for k in self.cols if (b >> k) & 1]


def build_incidence(sys: PolynomialSystem) -> IncidenceMatrix:
    n = sys.nvars
    dropped = set()
    row_of: dict[tuple[int, ...], int] = {}
    monomials: list[tuple[int, ...]] = []
    origins: list[list[tuple[int, int]]] = []
    term_row = []
    for i, poly in enumerate(sys.equations):
        rows = []
        for j, term in enumerate(poly):
            a = term.exponents
            dropped.update(k for k, e in enumerate(a) if e < 0)
            r = row_of.get(a)
            if r is None:
                r = row_of[a] = len(monomials)
                monomials.append(a)
                origins.append([])
            origins[r].append((i, j))
            rows.append(r)
        term_row.append(tuple(rows))
    cols = tuple(k for k in range(n) if k not in dropped)
    bits = []
    for a in monomials:
        b = 0
        for k in cols:
            if a[k] > 0:
                b |= 1 << k
        bits.append(b)
    return IncidenceMatrix(
        monomials=tuple(monomials),
        origins=tuple(tuple(o) for o in origins),
        cols=cols,
        dropped=frozenset(dropped),
        bits=tuple(bits),
        term_row=tuple(term_row),
        nvars=n,
    )


def selection_mask(M: IncidenceMatrix, S: Iterable[int]) -> int:
    mask = 0
    for k in S:
        if not 0 <= k < M.nvars:
            raise IndexError(f"variable index {k} out of range")
        if k in M.dropped:
            raise ValueError(f"variable {k} occurs with a negative exponent and cannot be zero")
        mask |= 1 << k
    return mask


def row_covered(M: IncidenceMatrix, row: int, S: Iterable[int]) -> bool:
    if not 0 <= row < M.nrows:
        raise IndexError(f"row {row} out of range")
    return bool(M.bits[row] & selection_mask(M, S))


def vanishes(sys: PolynomialSystem, M: IncidenceMatrix, S: Iterable[int]) -> bool:
    """True iff zeroing every variable of S kills every term of every equation."""
    mask = selection_mask(M, S)
    return all(b & mask for b in M.bits)


def format_incidence(sys: PolynomialSystem, M: IncidenceMatrix) -> str:
    names = sys.vars.names
    labels = []
    for a in M.monomials:
        parts = []
        for k, e in enumerate(a):
            if e == 1:
                parts.append(names[k])
            elif e != 0:
                parts.append(f"{names[k]}^{e}")
        labels.append("*".join(parts) or "1")
    header = [names[k] for k in M.cols]
    lw = max([len(s) for s in labels] + [0])
    widths = [max(len(h), 1) for h in header]
    lines = [" " * lw + " | " + " ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("-" * len(lines[0]))
    for label, row in zip(labels, M.dense()):
        lines.append(label.ljust(lw) + " | " +
                     " ".join(str(v).rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines)

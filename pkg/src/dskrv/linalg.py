"""Exact Gauss-Jordan elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["RationalMatrix", "nullspace", "rank", "rref"]


class RationalMatrix:
    """Immutable dense matrix of ``Fraction`` entries."""

    __slots__ = ("_rows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        data = tuple(tuple(Fraction(c) for c in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("rows must all have the same length")
        self._rows = data
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.ncols, self._rows))

    def __matmul__(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} does not match {self.ncols} columns")
        return [sum((a * b for a, b in zip(row, v) if a), Fraction(0)) for row in self._rows]

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return RationalMatrix(self._rows + other._rows, self.ncols)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(c) for c in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}], ncols={self.ncols})"


def _as_matrix(M) -> RationalMatrix:
    return M if isinstance(M, RationalMatrix) else RationalMatrix(M)


def rref(M) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot choice: leftmost column with a nonzero entry at or below the
    current row, first such row.  Zero rows are kept at the bottom so the
    shape is unchanged.
    """
    M = _as_matrix(M)
    nrows, ncols = M.shape
    # sparse working rows: col -> value
    work = [{j: c for j, c in enumerate(row) if c} for row in M.rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if col in work[i]), None)
        if k is None:
            continue
        work[r], work[k] = work[k], work[r]
        prow = work[r]
        inv = 1 / prow[col]
        if inv != 1:
            for j in prow:
                prow[j] *= inv
        for i in range(nrows):
            if i == r:
                continue
            row = work[i]
            f = row.get(col)
            if not f:
                continue
            for j, c in prow.items():
                v = row.get(j, 0) - f * c
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        pivots.append(col)
        r += 1
    dense = [[row.get(j, Fraction(0)) for j in range(ncols)] for row in work]
    return RationalMatrix(dense, ncols), pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column (in column order).

    Each vector has a 1 in its free column and zeros in the other free
    columns, and is then scaled so its first nonzero entry is positive.
    """
    R, pivots = rref(M)
    ncols = R.ncols
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        first = next(c for c in v if c)
        if first < 0:
            v = [-c for c in v]
        basis.append(v)
    return basis

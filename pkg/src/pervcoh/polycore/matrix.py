"""Dense matrices of polynomials.  A matrix acts on column vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .groebner import FreeElement
from .poly import Polynomial


@dataclass(frozen=True)
class Matrix:
    nvars: int
    nrows: int
    ncols: int
    rows: Tuple[Tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.nrows or any(len(r) != self.ncols for r in rows):
            raise ValueError(f"matrix entries do not match shape {self.nrows}x{self.ncols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]], nvars: int, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(nvars, len(rows), ncols, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, nvars: int, nrows: int, ncols: int) -> "Matrix":
        z = Polynomial.zero(nvars)
        return cls(nvars, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, nvars: int, n: int) -> "Matrix":
        z, one = Polynomial.zero(nvars), Polynomial.constant(nvars, 1)
        return cls(nvars, n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, cols: Sequence[FreeElement], nvars: int, nrows: int) -> "Matrix":
        if not cols:
            return cls.zeros(nvars, nrows, 0)
        return cls(nvars, nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def columns(self) -> List[FreeElement]:
        if self.nrows == 0:
            return []
        return [FreeElement(tuple(self.rows[i][j] for i in range(self.nrows))) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.nvars, self.ncols, self.nrows,
                      tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = Polynomial.zero(self.nvars)
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix(self.nvars, self.nrows, other.ncols, tuple(out))

    def scale(self, c) -> "Matrix":
        return Matrix(self.nvars, self.nrows, self.ncols, tuple(tuple(a * c for a in r) for r in self.rows))

    def apply(self, v: FreeElement) -> FreeElement:
        if v.rank != self.ncols:
            raise ValueError("rank mismatch")
        z = Polynomial.zero(self.nvars)
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, v.components):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return FreeElement(tuple(out))

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def first_nonzero(self):
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a:
                    return i, j
        return None


def block_diagonal(blocks: Sequence[Matrix], nvars: int) -> Matrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    z = Polynomial.zero(nvars)
    rows = [[z] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[r0 + i][c0 + j] = b.rows[i][j]
        r0 += b.nrows
        c0 += b.ncols
    return Matrix(nvars, nrows, ncols, tuple(tuple(r) for r in rows))

"""Exact linear algebra over the rationals.

Every matrix entry is a ``fractions.Fraction``; there is no floating point
anywhere.  All routines are deterministic: identical inputs give identical
outputs, bit for bit.  Row-reduction always picks the first usable pivot row,
so reduced echelon forms (and everything derived from them: kernels,
particular solutions, canonical subspace bases) are canonical.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Iterable, List, Optional, Sequence, Tuple


class RatMatrix:
    """Immutable rational matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Tuple[Q, ...]):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(Q(e) for e in entries))

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat: List[Q] = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(Q(e) for e in row)
        return cls(r, c, tuple(flat))

    def at(self, i: int, j: int) -> Q:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Q, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> List[List[Q]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, {self.to_rows()})"

    def transpose(self) -> "RatMatrix":
        ent = tuple(
            self.at(i, j) for j in range(self.cols) for i in range(self.rows)
        )
        return RatMatrix(self.cols, self.rows, ent)

    def mul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ent: List[Q] = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                s = Q(0)
                for k in range(self.cols):
                    if ri[k]:
                        s += ri[k] * other.at(k, j)
                ent.append(s)
        return RatMatrix(self.rows, other.cols, tuple(ent))

    def add(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        ent = tuple(a + b for a, b in zip(self.entries, other.entries))
        return RatMatrix(self.rows, self.cols, ent)

    def scale(self, c) -> "RatMatrix":
        c = Q(c)
        return RatMatrix(
            self.rows, self.cols, tuple(c * e for e in self.entries)
        )

    def neg(self) -> "RatMatrix":
        return self.scale(-1)

    def trace(self) -> Q:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum((self.at(i, i) for i in range(self.rows)), Q(0))

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = RatMatrix(
            n,
            2 * n,
            tuple(
                self.at(i, j) if j < n else Q(1 if j - n == i else 0)
                for i in range(n)
                for j in range(2 * n)
            ),
        )
        red, pivots = rref(aug)
        if [p for p in pivots if p < n] != list(range(n)):
            raise ValueError("matrix is singular")
        ent = tuple(
            red.at(i, n + j) for i in range(n) for j in range(n)
        )
        return RatMatrix(n, n, ent)

    def charpoly(self) -> List[Q]:
        """Characteristic polynomial det(tI - m), leading coefficient first.

        Faddeev-LeVerrier recursion; exact in Fractions.
        """
        if self.rows != self.cols:
            raise ValueError("charpoly of non-square matrix")
        n = self.rows
        coeffs: List[Q] = [Q(1)]
        m_k = identity(n)
        for k in range(1, n + 1):
            m_k = self.mul(m_k)
            c = -m_k.trace() / k
            coeffs.append(c)
            if k < n:
                m_k = m_k.add(identity(n).scale(c))
        return coeffs


def identity(n: int) -> RatMatrix:
    return RatMatrix(
        n, n, tuple(Q(1 if i == j else 0) for i in range(n) for j in range(n))
    )


def zero(rows: int, cols: int) -> RatMatrix:
    return RatMatrix(rows, cols, tuple(Q(0) for _ in range(rows * cols)))


def rref(m: RatMatrix) -> Tuple[RatMatrix, List[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Q(1) / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    ent = tuple(e for row in rows for e in row)
    return RatMatrix(nrows, ncols, ent), pivots


def rank(m: RatMatrix) -> int:
    _, pivots = rref(m)
    return len(pivots)


def kernel_basis(m: RatMatrix) -> List[RatMatrix]:
    """Canonical basis of the right null space, as column vectors.

    One basis vector per free column of the RREF: entry 1 at the free
    column, minus the pivot-row coefficients elsewhere.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis: List[RatMatrix] = []
    for fc in free:
        v = [Q(0)] * m.cols
        v[fc] = Q(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red.at(r, fc)
        basis.append(RatMatrix(m.cols, 1, tuple(v)))
    return basis


def solve(m: RatMatrix, b: RatMatrix) -> Optional[RatMatrix]:
    """Particular solution of m x = b with free variables set to zero.

    Supports multiple right-hand-side columns.  Returns None when the
    system is inconsistent.
    """
    if b.rows != m.rows:
        raise ValueError("right-hand side has wrong number of rows")
    aug = RatMatrix(
        m.rows,
        m.cols + b.cols,
        tuple(
            m.at(i, j) if j < m.cols else b.at(i, j - m.cols)
            for i in range(m.rows)
            for j in range(m.cols + b.cols)
        ),
    )
    red, pivots = rref(aug)
    if any(p >= m.cols for p in pivots):
        return None
    ent = [Q(0)] * (m.cols * b.cols)
    for r, pc in enumerate(pivots):
        for j in range(b.cols):
            ent[pc * b.cols + j] = red.at(r, m.cols + j)
    return RatMatrix(m.cols, b.cols, tuple(ent))


def row_space_rref(rows: Iterable[Sequence[Q]], ncols: int) -> List[List[Q]]:
    """Canonical (RREF) basis of the span of the given row vectors."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    red, pivots = rref(RatMatrix.from_rows(rows))
    return [list(red.row(i)) for i in range(len(pivots))]


def reduce_by_rref(v: Sequence[Q], basis: List[List[Q]]) -> List[Q]:
    """Reduce v modulo the span of an RREF row basis."""
    v = list(v)
    for row in basis:
        pc = next(i for i, e in enumerate(row) if e != 0)
        if v[pc] != 0:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return v


def coords_in_rows(v: Sequence[Q], rows: List[List[Q]]) -> Optional[List[Q]]:
    """Coefficients x with sum_i x_i rows[i] = v, or None if v not in span."""
    if not rows:
        return [] if all(e == 0 for e in v) else None
    a = RatMatrix.from_rows(rows).transpose()
    b = RatMatrix(len(v), 1, tuple(Q(e) for e in v))
    x = solve(a, b)
    if x is None:
        return None
    return [x.at(i, 0) for i in range(len(rows))]

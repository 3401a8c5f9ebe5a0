"""Exact integer linear algebra: Hermite and Smith normal forms, saturated
kernels, and canonical sublattice bases.

Everything here works on arbitrary-precision Python integers; no floating
point is involved at any stage.  The Hermite form is row-style with positive
pivots and entries above each pivot reduced into [0, pivot), which makes it a
unique representative of the row space and lets sublattices be compared by
structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import InfiniteIndex

Vec = tuple[int, ...]


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_neg(u: Sequence[int]) -> Vec:
    return tuple(-a for a in u)


def vec_scale(k: int, u: Sequence[int]) -> Vec:
    return tuple(k * a for a in u)


def is_zero_vec(u: Sequence[int]) -> bool:
    return not any(u)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major integer matrix.

    The column count is stored explicitly so matrices with zero rows keep a
    well-defined shape.
    """

    entries: tuple[Vec, ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("rows have inconsistent lengths")
            if cols is not None and cols != width:
                raise ValueError("declared column count does not match rows")
            cols = width
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(data, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)), cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(r[j] for r in self.entries) for j in range(self.cols)), self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ot = [tuple(r[j] for r in other.entries) for j in range(other.cols)]
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, col)) for col in ot) for r in self.entries),
            other.cols,
        )

    def mat_vec(self, v: Sequence[int]) -> Vec:
        """Column action: the image of the coordinate column v."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def vec_mat(self, v: Sequence[int]) -> Vec:
        """Row action: v as a row vector times this matrix."""
        if len(v) != self.rows:
            raise ValueError("vector length does not match row count")
        return tuple(sum(v[i] * self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.entries)

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        return IntMatrix(tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)), self.cols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(tuple(vec_scale(k, r) for r in self.entries), self.cols)


def stack(mats: Sequence[IntMatrix], cols: int | None = None) -> IntMatrix:
    if mats:
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("stacked matrices must share a column count")
    elif cols is None:
        raise ValueError("empty stack needs an explicit column count")
    rows: list[Vec] = []
    for m in mats:
        rows.extend(m.entries)
    return IntMatrix(tuple(rows), cols)


def _pivots(h: IntMatrix) -> list[tuple[int, int]]:
    """(row, col) of each pivot of a matrix in row echelon form."""
    out = []
    for i, r in enumerate(h.entries):
        for j, x in enumerate(r):
            if x:
                out.append((i, j))
                break
    return out


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with H = U @ m and U unimodular.  H is canonical: pivots
    are positive, every entry above a pivot is reduced into [0, pivot), and
    zero rows sink to the bottom.  Two matrices with the same row space get
    the same H.
    """
    n, ncols = m.rows, m.cols
    h = [list(r) for r in m.entries]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    piv = 0
    pivots: list[tuple[int, int]] = []
    for col in range(ncols):
        if piv == n:
            break
        while True:
            live = [r for r in range(piv, n) if h[r][col]]
            if not live:
                break
            r0 = min(live, key=lambda r: abs(h[r][col]))
            if r0 != piv:
                h[piv], h[r0] = h[r0], h[piv]
                u[piv], u[r0] = u[r0], u[piv]
            clean = True
            for r in range(piv + 1, n):
                if h[r][col]:
                    q = h[r][col] // h[piv][col]
                    h[r] = [a - q * b for a, b in zip(h[r], h[piv])]
                    u[r] = [a - q * b for a, b in zip(u[r], u[piv])]
                    if h[r][col]:
                        clean = False
            if clean:
                break
        if piv < n and h[piv][col]:
            if h[piv][col] < 0:
                h[piv] = [-x for x in h[piv]]
                u[piv] = [-x for x in u[piv]]
            pivots.append((piv, col))
            piv += 1
    for r, c in pivots:
        p = h[r][c]
        for i in range(r):
            q = h[i][c] // p
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
    return (
        IntMatrix(tuple(tuple(r) for r in h), ncols),
        IntMatrix(tuple(tuple(r) for r in u), n),
    )


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form.

    Returns (S, U, V) with S = U @ m @ V diagonal, U and V unimodular, and
    nonnegative diagonal entries satisfying d1 | d2 | ...  Pivoting always
    selects the smallest nonzero entry, which keeps coefficient growth tame
    at the ranks this library targets.
    """
    nr, nc = m.rows, m.cols
    s = [list(r) for r in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_sub(i, j, q):
        s[i] = [a - q * b for a, b in zip(s[i], s[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_sub(i, j, q):
        for r in s:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        while True:
            if s[t][t] < 0:
                s[t] = [-x for x in s[t]]
                u[t] = [-x for x in u[t]]
            piv = s[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if s[i][t]:
                    row_sub(i, t, s[i][t] // piv)
                    if s[i][t]:
                        dirty = True
            if dirty:
                live = [i for i in range(t + 1, nr) if s[i][t]]
                i0 = min(live, key=lambda i: abs(s[i][t]))
                swap_rows(t, i0)
                continue
            for j in range(t + 1, nc):
                if s[t][j]:
                    col_sub(j, t, s[t][j] // piv)
                    if s[t][j]:
                        dirty = True
            if dirty:
                live = [j for j in range(t + 1, nc) if s[t][j]]
                j0 = min(live, key=lambda j: abs(s[t][j]))
                swap_cols(t, j0)
                continue
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if s[i][j] % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # pull the offending row up so the next pass shrinks the pivot
            s[t] = [a + b for a, b in zip(s[t], s[offender])]
            u[t] = [a + b for a, b in zip(u[t], u[offender])]
        t += 1
    return (
        IntMatrix(tuple(tuple(r) for r in s), nc),
        IntMatrix(tuple(tuple(r) for r in u), nr),
        IntMatrix(tuple(tuple(r) for r in v), nc),
    )


def rank(m: IntMatrix) -> int:
    h, _ = hnf(m)
    return len(_pivots(h))


def solve_left(m: IntMatrix, target: Sequence[int]) -> Vec | None:
    """An integer row vector x with x @ m == target, or None."""
    if len(target) != m.cols:
        raise ValueError("target length does not match column count")
    h, u = hnf(m)
    t = list(int(x) for x in target)
    y = [0] * m.rows
    for r, c in _pivots(h):
        if t[c] % h.entries[r][c]:
            return None
        q = t[c] // h.entries[r][c]
        if q:
            y[r] = q
            t = [a - q * b for a, b in zip(t, h.entries[r])]
    if any(t):
        return None
    return u.vec_mat(y)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular square matrix."""
    if m.rows != m.cols:
        raise ValueError("only square matrices can be unimodular")
    h, u = hnf(m)
    if h != IntMatrix.identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return u


@dataclass(frozen=True)
class SublatticeBasis:
    """A sublattice of Z^n held in canonical Hermite form.

    Canonicity makes structural equality coincide with equality of the
    underlying sublattices.
    """

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def from_vectors(cls, ambient_rank: int, vectors: Iterable[Sequence[int]]) -> "SublatticeBasis":
        m = IntMatrix.from_rows(vectors, ambient_rank)
        if m.cols != ambient_rank:
            raise ValueError("vectors do not live in the declared ambient lattice")
        h, _ = hnf(m)
        rows = tuple(r for r in h.entries if any(r))
        return cls(ambient_rank, IntMatrix(rows, ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> "SublatticeBasis":
        return cls(ambient_rank, IntMatrix((), ambient_rank))

    @classmethod
    def full(cls, ambient_rank: int) -> "SublatticeBasis":
        return cls(ambient_rank, IntMatrix.identity(ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def vectors(self) -> tuple[Vec, ...]:
        return self.basis.entries

    def coordinates_of(self, v: Sequence[int]) -> Vec | None:
        return solve_left(self.basis, v)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates_of(v) is not None

    def contains_sublattice(self, other: "SublatticeBasis") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def saturation(self) -> "SublatticeBasis":
        """Smallest saturated sublattice containing this one."""
        if self.rank == 0:
            return self
        # right kernel of the basis, then the left kernel of that kernel
        right = kernel_saturated(self.basis.transpose())
        if right.rank == 0:
            return SublatticeBasis.full(self.ambient_rank)
        return kernel_saturated(right.basis.transpose())

    def is_saturated(self) -> bool:
        return self == self.saturation()


def kernel_saturated(m: IntMatrix) -> SublatticeBasis:
    """Basis of {v : v @ m == 0}; such a kernel is saturated automatically."""
    h, u = hnf(m)
    rows = [u.entries[i] for i in range(m.rows) if is_zero_vec(h.entries[i])]
    return SublatticeBasis.from_vectors(m.rows, rows)


def direct_sum_index(parts: Sequence[SublatticeBasis], ambient_rank: int) -> int:
    """Index of the sum of the parts inside the ambient standard lattice.

    Raises InfiniteIndex unless the part ranks add up to the ambient rank and
    the sum has full rank.  The parts form a direct sum filling the ambient
    lattice exactly when this returns 1.
    """
    if any(p.ambient_rank != ambient_rank for p in parts):
        raise ValueError("parts live in different ambient lattices")
    total = sum(p.rank for p in parts)
    if total != ambient_rank:
        raise InfiniteIndex(
            f"part ranks sum to {total}, ambient rank is {ambient_rank}"
        )
    stacked = stack([p.basis for p in parts], cols=ambient_rank)
    h, _ = hnf(stacked)
    pivots = _pivots(h)
    if len(pivots) != ambient_rank:
        raise InfiniteIndex("sum of parts does not have full rank")
    return prod(h.entries[r][c] for r, c in pivots)

"""Commutative orders presented by integer structure constants.

An order of rank n is stored as an n x n table of coordinate vectors,
table[i][j] being the coordinates of e_i * e_j on the basis, together with
the coordinates of the multiplicative identity.  validate() is the only
entry point that produces an Order, so every Order in circulation satisfies
the ring axioms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BadIdentity,
    InternalInconsistency,
    NotAssociative,
    NotCommutative,
    TorsionQuotient,
)
from .intlinalg import (
    IntMatrix,
    SublatticeBasis,
    Vec,
    inverse_unimodular,
    kernel_saturated,
    snf,
)

Table = tuple[tuple[Vec, ...], ...]


@dataclass(frozen=True)
class Order:
    rank: int
    table: Table
    one: Vec
    labels: tuple[str, ...] | None = None

    def unit(self, i: int) -> Vec:
        return tuple(int(j == i) for j in range(self.rank))

    def zero(self) -> Vec:
        return (0,) * self.rank

    def basis(self) -> tuple[Vec, ...]:
        return tuple(self.unit(i) for i in range(self.rank))

    def with_labels(self, labels: Sequence[str]) -> "Order":
        if len(labels) != self.rank:
            raise ValueError("label count must match the rank")
        return Order(self.rank, self.table, self.one, tuple(labels))


def _mul_raw(table: Table, x: Sequence[int], y: Sequence[int]) -> Vec:
    n = len(x)
    out = [0] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for m, t in enumerate(table[i][j]):
                if t:
                    out[m] += c * t
    return tuple(out)


def validate(table: Sequence, one: Sequence[int], labels: Sequence[str] | None = None) -> Order:
    """Check the ring axioms and return the resulting Order.

    Raises NotCommutative, NotAssociative, or BadIdentity naming the first
    violating basis indices.
    """
    n = len(one)
    tab: Table = tuple(tuple(tuple(int(c) for c in cell) for cell in row) for row in table)
    if len(tab) != n or any(len(row) != n for row in tab) or any(
        len(cell) != n for row in tab for cell in row
    ):
        raise ValueError(f"table must be {n}x{n} coordinate vectors of length {n}")
    one_t = tuple(int(c) for c in one)
    for i in range(n):
        for j in range(i + 1, n):
            if tab[i][j] != tab[j][i]:
                raise NotCommutative(i, j)
    units = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = _mul_raw(tab, tab[i][j], units[k])
                rhs = _mul_raw(tab, units[i], tab[j][k])
                if lhs != rhs:
                    raise NotAssociative(i, j, k)
    for i in range(n):
        if _mul_raw(tab, one_t, units[i]) != units[i]:
            raise BadIdentity(i)
    return Order(n, tab, one_t, tuple(labels) if labels is not None else None)


def mul(a: Order, x: Sequence[int], y: Sequence[int]) -> Vec:
    """Product of two elements given by coordinates; bilinear in both."""
    if len(x) != a.rank or len(y) != a.rank:
        raise ValueError("element length does not match the rank")
    return _mul_raw(a.table, x, y)


def power(a: Order, x: Sequence[int], k: int) -> Vec:
    if k < 0:
        raise ValueError("only nonnegative powers")
    out = a.one
    base = tuple(x)
    while k:
        if k & 1:
            out = mul(a, out, base)
        base = mul(a, base, base)
        k >>= 1
    return out


def regular_matrix(a: Order, x: Sequence[int]) -> IntMatrix:
    """Matrix of multiplication by x: M_x @ coords(y) = coords(x*y)."""
    n = a.rank
    rows = [[0] * n for _ in range(n)]
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j in range(n):
            cell = a.table[i][j]
            for m in range(n):
                if cell[m]:
                    rows[m][j] += xi * cell[m]
    return IntMatrix.from_rows(rows, n)


def trace_gram(a: Order) -> IntMatrix:
    """Integer Gram matrix of the trace form (x, y) -> trace of M_{x*y}."""
    n = a.rank
    # trace of multiplication by e_m
    tr = [sum(a.table[m][j][j] for j in range(n)) for m in range(n)]
    rows = [
        [sum(a.table[i][j][m] * tr[m] for m in range(n)) for j in range(n)]
        for i in range(n)
    ]
    return IntMatrix.from_rows(rows, n)


def nilradical(a: Order) -> SublatticeBasis:
    """Basis of the ideal of nilpotent elements.

    Computed as the saturated kernel of the trace form; each basis vector is
    certified nilpotent by repeated squaring (the nilpotency index is at most
    the rank).
    """
    if a.rank == 0:
        return SublatticeBasis.zero(0)
    ker = kernel_saturated(trace_gram(a))
    for v in ker.vectors():
        w = v
        for _ in range(max(1, a.rank.bit_length() + 1)):
            w = mul(a, w, w)
            if not any(w):
                break
        if any(w):
            raise InternalInconsistency(
                "trace-kernel vector is not nilpotent; the table is corrupt"
            )
    return ker


def is_reduced(a: Order) -> bool:
    return nilradical(a).rank == 0


def group_ring(cyclic_factors: Sequence[int]) -> tuple[Order, list[tuple[int, ...]]]:
    """Integral group ring of the product of cyclic groups of the given sizes.

    Returns the order together with the list of group elements indexing its
    basis (index i of the basis corresponds to elements[i]).
    """
    factors = [int(k) for k in cyclic_factors]
    if any(k < 1 for k in factors):
        raise ValueError("cyclic factors must be positive")
    elements = list(itertools.product(*(range(k) for k in factors)))
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = [[None] * n for _ in range(n)]
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            s = tuple((gi + hi) % k for gi, hi, k in zip(g, h, factors))
            table[i][j] = tuple(int(m == index[s]) for m in range(n))
    one = tuple(int(i == index[tuple(0 for _ in factors)]) for i in range(n))
    labels = [_group_label(e, factors) for e in elements]
    return validate(table, one, labels), elements


def _group_label(e: tuple[int, ...], factors: Sequence[int]) -> str:
    if not any(e):
        return "1"
    if len(factors) == 1:
        return "g" if e[0] == 1 else f"g^{e[0]}"
    return "g(" + ",".join(str(c) for c in e) + ")"


def monogenic_order(f_coeffs: Sequence[int]) -> Order:
    """Order Z[X]/(f) with the power basis, f monic with the given
    coefficients listed from the constant term up to the leading 1."""
    coeffs = [int(c) for c in f_coeffs]
    if len(coeffs) < 2 or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic of degree at least 1")
    n = len(coeffs) - 1
    # powers of x modulo f, for exponents up to 2n-2
    powers = [[int(k == e) for k in range(n)] for e in range(n)]
    cur = list(powers[-1])
    for _ in range(n - 1):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(n):
                cur[k] -= top * coeffs[k]
        powers.append(list(cur))
    table = [[tuple(powers[i + j]) for j in range(n)] for i in range(n)]
    one = tuple(int(k == 0) for k in range(n))
    labels = ["1"] + [("x" if e == 1 else f"x^{e}") for e in range(1, n)]
    return validate(table, one, labels)


def product_order(a: Order, b: Order) -> Order:
    """Direct product ring on the concatenated bases."""
    n, m = a.rank, b.rank
    total = n + m
    table = [[None] * total for _ in range(total)]
    zero = (0,) * total
    for i in range(total):
        for j in range(total):
            if i < n and j < n:
                table[i][j] = tuple(a.table[i][j]) + (0,) * m
            elif i >= n and j >= n:
                table[i][j] = (0,) * n + tuple(b.table[i - n][j - n])
            else:
                table[i][j] = zero
    one = tuple(a.one) + tuple(b.one)
    return validate(table, one)


def ideal_closure(a: Order, gens: Sequence[Sequence[int]]) -> SublatticeBasis:
    """Smallest sublattice containing gens that is closed under
    multiplication by the order, i.e. the ideal they generate."""
    current = SublatticeBasis.from_vectors(a.rank, gens)
    while True:
        rows = list(current.vectors())
        extra = [mul(a, v, e) for v in current.vectors() for e in a.basis()]
        nxt = SublatticeBasis.from_vectors(a.rank, rows + extra)
        if nxt == current:
            return current
        current = nxt


def quotient_order(a: Order, ideal_gens: Sequence[Sequence[int]]) -> tuple[Order, IntMatrix]:
    """Quotient of the order by the ideal generated by ideal_gens.

    Returns the quotient order on a chosen integral basis together with the
    projection matrix P; the image of x is x @ P in quotient coordinates.
    Raises TorsionQuotient when the quotient has additive torsion.
    """
    ideal = ideal_closure(a, ideal_gens)
    if not ideal.is_saturated():
        raise TorsionQuotient(
            "the ideal is strictly contained in its saturation; the quotient has torsion"
        )
    r, n = ideal.rank, a.rank
    if r == 0:
        return a, IntMatrix.identity(n)
    _, _, v = snf(ideal.basis)
    # saturation makes all elementary divisors 1, so x -> last n-r coords of x@V
    # projects onto the quotient, with V^{-1} rows r..n-1 lifting the new basis
    vinv = inverse_unimodular(v)
    proj = IntMatrix.from_rows([row[r:] for row in v.entries], n - r)
    lifts = [vinv.entries[r + i] for i in range(n - r)]
    q = n - r
    table = [
        [proj.vec_mat(mul(a, lifts[i], lifts[j])) for j in range(q)]
        for i in range(q)
    ]
    one = proj.vec_mat(a.one)
    return validate(table, one), proj


def subring_order(a: Order, sub: SublatticeBasis) -> tuple[Order, IntMatrix]:
    """Order structure induced on a multiplicatively closed unital sublattice.

    Returns the suborder and its basis matrix (rows are coordinates in a).
    Raises ValueError when the sublattice is not closed or misses 1.
    """
    if sub.ambient_rank != a.rank:
        raise ValueError("sublattice does not live in this order")
    rows = sub.vectors()
    r = sub.rank
    one = sub.coordinates_of(a.one)
    if one is None:
        raise ValueError("sublattice does not contain 1")
    table = []
    for i in range(r):
        row = []
        for j in range(r):
            c = sub.coordinates_of(mul(a, rows[i], rows[j]))
            if c is None:
                raise ValueError("sublattice is not closed under multiplication")
            row.append(c)
        table.append(row)
    return validate(table, one), sub.basis


def order_to_json(a: Order) -> dict:
    data = {
        "rank": a.rank,
        "one": list(a.one),
        "table": [[list(cell) for cell in row] for row in a.table],
    }
    if a.labels is not None:
        data["labels"] = list(a.labels)
    return data


def order_from_json(data: dict) -> Order:
    if not isinstance(data, dict):
        raise ValueError("order document must be a JSON object")
    for key in ("rank", "one", "table"):
        if key not in data:
            raise ValueError(f"order document is missing '{key}'")
    n = int(data["rank"])
    one = data["one"]
    table = data["table"]
    if len(one) != n or len(table) != n:
        raise ValueError("declared rank does not match the data")
    labels = data.get("labels")
    return validate(table, one, labels)

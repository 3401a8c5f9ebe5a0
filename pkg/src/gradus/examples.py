"""Named example orders used by the CLI, the test suite, and the scripts.

The registry mixes constructor-built orders (group rings, monogenic rings,
quotients) with one explicit-table fixture, the rank-5 parity subring of
Z^5, which ships as JSON.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Callable, Sequence

from .grading import FinAbGroup, Grading, group_from_relations, make_grading
from .orders import (
    Order,
    group_ring,
    monogenic_order,
    order_from_json,
    product_order,
    quotient_order,
    validate,
)


def _tensor_order(a: Order, b: Order) -> Order:
    """Tensor product over the integers on the paired basis (i, j) -> e_i x f_j."""
    n, m = a.rank, b.rank
    total = n * m

    def idx(i, j):
        return i * m + j

    table = [[None] * total for _ in range(total)]
    for i1 in range(n):
        for j1 in range(m):
            for i2 in range(n):
                for j2 in range(m):
                    cell = [0] * total
                    ac = a.table[i1][i2]
                    bc = b.table[j1][j2]
                    for i3 in range(n):
                        if not ac[i3]:
                            continue
                        for j3 in range(m):
                            if bc[j3]:
                                cell[idx(i3, j3)] = ac[i3] * bc[j3]
                    table[idx(i1, j1)][idx(i2, j2)] = tuple(cell)
    one = [0] * total
    for i in range(n):
        for j in range(m):
            one[idx(i, j)] = a.one[i] * b.one[j]
    labels = None
    if a.labels and b.labels:
        labels = [
            f"{la}*{lb}" if la != "1" and lb != "1" else (lb if la == "1" else la)
            for la in a.labels
            for lb in b.labels
        ]
    return validate(table, one, labels)


def _integers() -> Order:
    return monogenic_order([-1, 1]).with_labels(["1"])


def _group_ring_order(factors: Sequence[int]) -> Order:
    return group_ring(factors)[0]


def _zeta5() -> Order:
    zc5, elems = group_ring([5])
    total = tuple(1 for _ in elems)
    q, _ = quotient_order(zc5, [total])
    return q


def _kummer6() -> Order:
    eisenstein = monogenic_order([1, 1, 1]).with_labels(["1", "w"])
    cbrt2 = monogenic_order([-2, 0, 0, 1]).with_labels(["1", "c", "c^2"])
    return _tensor_order(eisenstein, cbrt2)


def _parity5() -> Order:
    data = json.loads(
        resources.files("gradus.fixtures").joinpath("parity5.json").read_text()
    )
    return order_from_json(data)


def _zxz() -> Order:
    return product_order(_integers(), _integers())


_BUILDERS: dict[str, Callable[[], Order]] = {
    "z": _integers,
    "zxz": _zxz,
    "zc2": lambda: _group_ring_order([2]),
    "zc3": lambda: _group_ring_order([3]),
    "zc4": lambda: _group_ring_order([4]),
    "zc5": lambda: _group_ring_order([5]),
    "zc6": lambda: _group_ring_order([6]),
    "zc2c2": lambda: _group_ring_order([2, 2]),
    "zsqrt2": lambda: monogenic_order([-2, 0, 1]),
    "zsqrtm1": lambda: monogenic_order([1, 0, 1]),
    "zsqrt5": lambda: monogenic_order([-5, 0, 1]),
    "golden": lambda: monogenic_order([-1, -1, 1]),
    "zeta5": _zeta5,
    "kummer6": _kummer6,
    "parity5": _parity5,
    "dual": lambda: monogenic_order([0, 0, 1]),
}

EXAMPLE_SUMMARIES = {
    "z": "the integers",
    "zxz": "product ring Z x Z",
    "zc2": "group ring of the cyclic group of order 2",
    "zc3": "group ring of the cyclic group of order 3",
    "zc4": "group ring of the cyclic group of order 4",
    "zc5": "group ring of the cyclic group of order 5",
    "zc6": "group ring of the cyclic group of order 6",
    "zc2c2": "group ring of the Klein four-group",
    "zsqrt2": "Z[sqrt(2)]",
    "zsqrtm1": "Gaussian integers Z[i]",
    "zsqrt5": "Z[sqrt(5)] (non-maximal quadratic order)",
    "golden": "Z[(1+sqrt(5))/2]",
    "zeta5": "Z[zeta_5] as the group ring of C5 modulo the sum of the group",
    "kummer6": "Z[w, c] with w^2+w+1 = 0 and c^3 = 2, rank 6",
    "parity5": "subring of Z^5 of vectors with all coordinates of equal parity",
    "dual": "dual numbers Z[X]/(X^2), not reduced",
}


def example_names() -> list[str]:
    return sorted(_BUILDERS)


def example_order(name: str) -> Order:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown example '{name}'; available: {', '.join(example_names())}"
        ) from None
    return builder()


def natural_group_ring_grading(factors: Sequence[int]) -> tuple[Order, Grading]:
    """Group ring of the product of cyclic groups, graded by itself: the
    piece at each group element is the span of that basis vector."""
    order, elems = group_ring(factors)
    r = len(factors)
    diag = [[factors[i] * int(i == j) for j in range(r)] for i in range(r)]
    group, gen_images = group_from_relations(r, diag) if r else (FinAbGroup(()), ())

    def to_canonical(e: Sequence[int]) -> tuple[int, ...]:
        out = group.identity
        for c, img in zip(e, gen_images):
            out = group.add(out, group.smul(c, img))
        return out

    rows_by = {}
    for i, e in enumerate(elems):
        rows_by.setdefault(to_canonical(e), []).append(order.unit(i))
    return order, make_grading(order, group, rows_by)


def quadratic_grading(d: int) -> tuple[Order, Grading]:
    """Z[sqrt(d)] with its splitting into 1-span and sqrt(d)-span."""
    order = monogenic_order([-d, 0, 1])
    group = FinAbGroup((2,))
    grading = make_grading(order, group, {(0,): [(1, 0)], (1,): [(0, 1)]})
    return order, grading


def dual_numbers_grading() -> tuple[Order, Grading]:
    """Dual numbers graded by residue of the exponent: constants at the
    identity, the nilpotent line at the other element."""
    order = monogenic_order([0, 0, 1])
    group = FinAbGroup((2,))
    grading = make_grading(order, group, {(0,): [(1, 0)], (1,): [(0, 1)]})
    return order, grading

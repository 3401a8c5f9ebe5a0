import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from gradus.embeddings import (
    compute_embeddings,
    gram,
    gram_from_strings,
    is_nonneg,
    is_zero,
    norm,
)
from gradus.errors import AmbiguousSign, AmbiguousZero, NotReduced
from gradus.examples import example_order
from gradus.lattices import enumerate_up_to
from gradus.orders import group_ring, monogenic_order, quotient_order


def close(a, b, tol):
    return abs(a - b) <= tol


def rows_as_set(e):
    return {tuple((mp.nstr(mp.re(x), 12), mp.nstr(mp.im(x), 12)) for x in row) for row in e.sigma}


def test_embeddings_zc2():
    a, _ = group_ring([2])
    e = compute_embeddings(a)
    assert e.n == 2
    want = {(("1.0", "0.0"), ("1.0", "0.0")), (("1.0", "0.0"), ("-1.0", "0.0"))}
    assert rows_as_set(e) == want


def test_embeddings_integers():
    a = monogenic_order([-1, 1])
    e = compute_embeddings(a)
    assert e.n == 1
    assert close(e.sigma[0][0], 1, e.residual)


def test_embeddings_zsqrt2_matches_root_oracle():
    a = monogenic_order([-2, 0, 1])
    e = compute_embeddings(a)
    with mp.workprec(e.precision):
        root = mp.sqrt(2)
        vals = sorted((mp.re(row[1]) for row in e.sigma))
        assert close(vals[0], -root, mpf(10) ** -40)
        assert close(vals[1], root, mpf(10) ** -40)


def test_embeddings_require_reduced():
    with pytest.raises(NotReduced):
        compute_embeddings(monogenic_order([0, 0, 1]))


def test_embeddings_each_row_multiplicative():
    a = example_order("kummer6")
    e = compute_embeddings(a)
    tol = mpf(2) ** (-e.precision // 2 + 8)
    with mp.workprec(e.precision):
        for row in e.sigma:
            for i in range(a.rank):
                for j in range(a.rank):
                    lin = mp.fsum(
                        t * row[m] for m, t in enumerate(a.table[i][j]) if t
                    )
                    assert abs(row[i] * row[j] - lin) <= tol


def test_gram_zc2():
    a, _ = group_ring([2])
    g = gram(compute_embeddings(a))
    for i in range(2):
        for j in range(2):
            assert close(g.entries[i][j], 2 * int(i == j), g.tolerance)


def test_gram_zsqrt2_hand_values():
    g = gram(compute_embeddings(monogenic_order([-2, 0, 1])))
    want = [[2, 0], [0, 4]]
    for i in range(2):
        for j in range(2):
            assert close(g.entries[i][j], want[i][j], g.tolerance)


def test_gram_golden_hand_values():
    g = gram(compute_embeddings(monogenic_order([-1, -1, 1])))
    want = [[2, 1], [1, 3]]
    for i in range(2):
        for j in range(2):
            assert close(g.entries[i][j], want[i][j], g.tolerance)


@pytest.mark.parametrize(
    "name", ["z", "zc2", "zc3", "zc2c2", "zsqrt2", "golden", "zeta5", "kummer6", "parity5"]
)
def test_norm_of_one_is_rank(name):
    a = example_order(name)
    g = gram(compute_embeddings(a))
    assert close(norm(g, a.one), a.rank, g.tolerance)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=2))
def test_group_ring_gram_is_order_times_identity(factors):
    a, elems = group_ring(factors)
    n = a.rank
    g = gram(compute_embeddings(a))
    for i in range(n):
        for j in range(n):
            assert close(g.entries[i][j], n * int(i == j), g.tolerance)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_zeta5_norm_formula(coords):
    # the squared length of the image of sum x_g g is the sum of squared
    # coordinate differences over unordered pairs
    zc5, _ = group_ring([5])
    q, proj = quotient_order(zc5, [(1, 1, 1, 1, 1)])
    g = gram(compute_embeddings(q))
    img = proj.vec_mat(coords)
    want = sum(
        (coords[i] - coords[j]) ** 2 for i in range(5) for j in range(i + 1, 5)
    )
    assert close(norm(g, img), want, g.tolerance)


def test_parity_ring_short_vector():
    a = example_order("parity5")
    g = gram(compute_embeddings(a))
    # (2,0,0,0,0) in ambient Z^5 is 2*u - 2e1 - 2e2 - 2e3 - 2e4 in the basis
    coords = (2, -1, -1, -1, -1)
    assert close(norm(g, coords), 4, g.tolerance)
    assert a.rank == 5


@pytest.mark.parametrize("name", ["zc3", "zsqrt2", "kummer6", "parity5"])
def test_norm_bounds_count_of_nonvanishing_embeddings(name):
    a = example_order(name)
    e = compute_embeddings(a)
    g = gram(e)
    with mp.workprec(g.precision):
        for v in enumerate_up_to(g, a.rank + 2):
            hits = 0
            for row in e.sigma:
                val = mp.fsum(c * row[i] for i, c in enumerate(v) if c)
                if abs(val) > g.tolerance:
                    hits += 1
            assert norm(g, v) >= hits - g.tolerance


def test_zero_and_sign_bands():
    g = gram_from_strings([["2", "0"], ["0", "2"]], precision=128)
    tol = g.tolerance
    assert is_zero(g, tol / 2)
    assert not is_zero(g, tol * (1 << 20))
    with pytest.raises(AmbiguousZero):
        is_zero(g, tol * 16)
    assert is_nonneg(g, -tol / 2)
    assert not is_nonneg(g, -tol * (1 << 20))
    with pytest.raises(AmbiguousSign):
        is_nonneg(g, -tol * 16)


def test_gram_from_strings_validation():
    with pytest.raises(ValueError):
        gram_from_strings([["1", "2"], ["3", "4"]])
    with pytest.raises(ValueError):
        gram_from_strings([["1", "2", "0"], ["2", "1", "0"]])


def test_embeddings_deterministic_for_seed():
    a = example_order("kummer6")
    e1 = compute_embeddings(a, seed=7)
    e2 = compute_embeddings(a, seed=7)
    assert e1.sigma == e2.sigma


@pytest.mark.parametrize("name", ["zxz", "zc2c2", "zeta5", "kummer6"])
def test_embedding_rows_pairwise_distinct(name):
    a = example_order(name)
    e = compute_embeddings(a)
    g = gram(e)
    with mp.workprec(e.precision):
        for i in range(e.n):
            for j in range(i + 1, e.n):
                gap = max(abs(x - y) for x, y in zip(e.sigma[i], e.sigma[j]))
                assert gap > g.tolerance

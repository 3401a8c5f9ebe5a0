"""Independent oracles used across the test suite.

Everything here is deliberately written from scratch with naive algorithms
(pairwise extended-gcd elimination, Fraction Gaussian elimination, explicit
box scans, partition search) so the library under test and its checks share
no code paths.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, isqrt


def xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def oracle_hnf(rows, cols):
    """Canonical row-style Hermite form via pairwise xgcd elimination."""
    work = [list(r) for r in rows]
    n = len(work)
    piv = 0
    pivots = []
    for col in range(cols):
        if piv == n:
            break
        pivot_row = None
        for r in range(piv, n):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[piv], work[pivot_row] = work[pivot_row], work[piv]
        for r in range(piv + 1, n):
            if not work[r][col]:
                continue
            a, b = work[piv][col], work[r][col]
            g, s, t = xgcd(a, b)
            u, v = -(b // g), a // g
            new_piv = [s * p + t * q for p, q in zip(work[piv], work[r])]
            new_r = [u * p + v * q for p, q in zip(work[piv], work[r])]
            work[piv], work[r] = new_piv, new_r
        if work[piv][col] < 0:
            work[piv] = [-x for x in work[piv]]
        pivots.append((piv, col))
        piv += 1
    for r, c in pivots:
        for i in range(r):
            q = work[i][c] // work[r][c]
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
    return [tuple(r) for r in work]


def oracle_invariant_factors(rows, cols):
    """Invariant factors of an integer matrix via gcds of minors."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form

    if not rows:
        return []
    s = smith_normal_form(Matrix([list(r) for r in rows]))
    out = []
    for i in range(min(s.rows, s.cols)):
        out.append(abs(int(s[i, i])))
    return out


def frac_inverse(mat):
    """Exact inverse of a rational square matrix via Gaussian elimination."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def quad_form(gram, v):
    return sum(v[i] * sum(gram[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))


def dot_form(gram, u, v):
    return sum(u[i] * sum(gram[i][j] * v[j] for j in range(len(v))) for i in range(len(u)))


def oracle_short_vectors(gram, bound):
    """All nonzero v with v G v^T <= bound, one per +/- pair, by scanning an
    explicit coordinate box derived from the inverse form."""
    n = len(gram)
    inv = frac_inverse(gram)
    box = []
    for i in range(n):
        radius2 = Fraction(bound) * inv[i][i]
        lim = isqrt(int(radius2)) + 1
        box.append(range(-lim, lim + 1))
    out = set()
    for v in itertools.product(*box):
        if not any(v):
            continue
        if quad_form(gram, v) <= bound:
            for c in v:
                if c:
                    if c < 0:
                        v = tuple(-x for x in v)
                    break
            out.add(v)
    return sorted(out)


def oracle_indecomposable(gram, v, pool):
    """Exact decomposability test: some nonzero x != v with q(x) < q(v) and
    <x, v - x> >= 0 disqualifies v."""
    qv = quad_form(gram, v)
    for cand in pool:
        if quad_form(gram, cand) >= qv:
            continue
        for x in (cand, tuple(-c for c in cand)):
            if x == tuple(v):
                continue
            y = tuple(a - b for a, b in zip(v, x))
            if not any(y):
                continue
            if dot_form(gram, x, y) >= 0:
                return False
    return True


def set_partitions(items):
    """All partitions of a list, as lists of blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def oracle_finest_orthogonal_partition(gram):
    """Brute-force reference for the finest orthogonal splitting.

    Enumerates a generating set (all vectors up to the largest diagonal
    entry), keeps the indecomposable ones, tries every partition, keeps the
    orthogonal partitions, and returns the unique finest one as a list of
    sorted generator blocks.
    """
    n = len(gram)
    bound = max(gram[i][i] for i in range(n))
    vecs = oracle_short_vectors(gram, bound)
    indec = [v for v in vecs if oracle_indecomposable(gram, v, vecs)]
    best = None
    for part in set_partitions(indec):
        ok = all(
            dot_form(gram, x, y) == 0
            for b1, b2 in itertools.combinations(part, 2)
            for x in b1
            for y in b2
        )
        if ok and (best is None or len(part) > len(best)):
            best = part
    assert best is not None
    finest = [sorted(b) for b in best]
    finest.sort()
    return finest


def random_unimodular(rng, n, steps=12):
    """Random unimodular matrix as a product of elementary operations."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 1:
            m[i] = [-x for x in m[i]]
        elif i != j:
            c = rng.randrange(-3, 4)
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def random_hom(rng, source):
    """Seeded random homomorphism out of an invariant-factor group."""
    from gradus.grading import FinAbGroup, GroupHom

    pool = [(), (2,), (3,), (4,), (6,), (2, 2), (2, 4), (12,)]
    target = FinAbGroup(rng.choice(pool))
    images = []
    for d in source.invariant_factors:
        img = tuple(
            rng.randrange(gcd(m, d)) * (m // gcd(m, d))
            for m in target.invariant_factors
        )
        images.append(img)
    return GroupHom(source, target, tuple(images))


def brute_roots_of_unity(table, one, radius=3, max_order=72):
    """All x in a small coordinate box with x**k = 1 for some k <= max_order;
    complete for the tiny fixtures it is used on."""
    n = len(one)

    def mul(x, y):
        out = [0] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                for m in range(n):
                    out[m] += x[i] * y[j] * table[i][j][m]
        return tuple(out)

    one = tuple(one)
    out = []
    for v in itertools.product(range(-radius, radius + 1), repeat=n):
        acc = tuple(v)
        for _ in range(max_order):
            if acc == one:
                out.append(tuple(v))
                break
            acc = mul(acc, v)
    return sorted(out)


def brute_idempotents(table, one, radius=3):
    """All x with x*x = x inside a small coordinate box; complete for the
    tiny fixtures it is used on."""
    n = len(one)

    def mul(x, y):
        out = [0] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                for m in range(n):
                    out[m] += x[i] * y[j] * table[i][j][m]
        return tuple(out)

    out = []
    for v in itertools.product(range(-radius, radius + 1), repeat=n):
        if mul(v, v) == v:
            out.append(tuple(v))
    return sorted(out)

"""Complex embeddings of a reduced order and its canonical inner product.

A reduced order of rank n has exactly n ring homomorphisms into the complex
numbers.  They are recovered numerically: a seeded integer combination z of
the basis is formed, the eigenvectors of multiplication-by-z are computed at
the working precision, and the value of each embedding on each basis vector
is read off as a Rayleigh quotient of the corresponding multiplication
matrix on the shared eigenvector.  A residual bound certifies that every row
really is multiplicative to within the working precision.

The inner product <x, y> = sum over embeddings of sigma(x) * conj(sigma(y))
is assembled into a Gram form.  Entries can be irrational, so zero tests are
made against a tolerance, with a wide ambiguous band in between: any value
landing in the band aborts the computation so the caller can escalate the
precision instead of guessing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

from mpmath import mp, mpc, mpf

from .config import DEFAULT_CONFIG, RunConfig
from .errors import (
    AmbiguousSign,
    AmbiguousZero,
    DegenerateSplitting,
    EscalationNeeded,
    NotReduced,
    PrecisionExhausted,
)
from .orders import Order, is_reduced, regular_matrix

# |value| <= tol counts as zero, |value| >= AMBIGUITY_SPAN * tol as nonzero;
# anything in between needs more precision.
AMBIGUITY_SPAN = 1 << 16

T = TypeVar("T")


@dataclass(frozen=True)
class EmbeddingMatrix:
    """All ring homomorphisms into C, evaluated on the basis.

    sigma[k][i] is the k-th homomorphism applied to basis vector i.  Rows are
    sorted by the eigenvalue of the splitting element, so the output is
    reproducible for a fixed seed.
    """

    n: int
    sigma: tuple[tuple[mpc, ...], ...]
    precision: int
    residual: mpf


@dataclass(frozen=True)
class GramForm:
    """Real symmetric positive-definite matrix of the canonical form."""

    n: int
    entries: tuple[tuple[mpf, ...], ...]
    precision: int
    tolerance: mpf
    residual: mpf


def compute_embeddings(
    a: Order,
    precision: int = 192,
    seed: int = 0,
    retries: int = 8,
    escalations: int = 4,
) -> EmbeddingMatrix:
    """Numerically compute the n embeddings of a reduced order.

    Doubles the working precision up to `escalations` times whenever the
    homomorphism residual is too large; raises DegenerateSplitting when no
    seeded splitting element separates the eigenvalues.
    """
    if not is_reduced(a):
        raise NotReduced("embeddings are only defined in this form for reduced orders")
    n = a.rank
    if n == 0:
        return EmbeddingMatrix(0, (), precision, mpf(0))
    mats = [regular_matrix(a, a.unit(i)) for i in range(n)]
    p = precision
    degenerate = True
    for _ in range(escalations + 1):
        with mp.workprec(p):
            result = _attempt_embeddings(a, mats, p, seed, retries)
        if isinstance(result, EmbeddingMatrix):
            return result
        degenerate = result
        p *= 2
    if degenerate:
        raise DegenerateSplitting(
            f"no splitting element separated the spectrum after {retries} tries per level"
        )
    raise PrecisionExhausted(
        f"embedding residual stayed above threshold up to {p // 2} bits"
    )


def _attempt_embeddings(a, mats, p, seed, retries):
    """One precision level; returns an EmbeddingMatrix or a bool telling
    whether the last failure was a degenerate spectrum."""
    n = a.rank
    sep_floor = mpf(2) ** (-(p // 4))
    degenerate = True
    for attempt in range(retries):
        rng = random.Random(f"{seed}:{p}:{attempt}")
        coeffs = [rng.randrange(-8 * n, 8 * n + 1) for _ in range(n)]
        mz = mp.matrix(n)
        for i, c in enumerate(coeffs):
            if not c:
                continue
            for r in range(n):
                for s in range(n):
                    if mats[i].entries[r][s]:
                        mz[r, s] += c * mats[i].entries[r][s]
        try:
            eigvals, eigvecs = mp.eig(mz)
        except (ZeroDivisionError, mp.NoConvergence):  # pragma: no cover
            continue
        if _min_separation(eigvals) <= sep_floor:
            continue
        degenerate = False
        sigma = _rayleigh_rows(mats, eigvecs, n)
        order_keys = sorted(range(n), key=lambda k: (mp.re(eigvals[k]), mp.im(eigvals[k])))
        sigma = tuple(sigma[k] for k in order_keys)
        residual = _hom_residual(a, sigma)
        scale = n * (1 + max(abs(s) for row in sigma for s in row)) ** 2
        if residual <= mpf(2) ** (-(p // 2)) * scale:
            return EmbeddingMatrix(n, sigma, p, residual)
        break
    return degenerate


def _min_separation(eigvals) -> mpf:
    n = len(eigvals)
    if n == 1:
        return mpf(1)
    return min(abs(eigvals[i] - eigvals[j]) for i in range(n) for j in range(i + 1, n))


def _rayleigh_rows(mats, eigvecs, n):
    rows = []
    for k in range(n):
        w = [eigvecs[r, k] for r in range(n)]
        denom = mp.fsum(abs(x) ** 2 for x in w)
        row = []
        for m in mats:
            mw = [
                mp.fsum(m.entries[r][s] * w[s] for s in range(n) if m.entries[r][s])
                for r in range(n)
            ]
            numer = mp.fsum(mp.conj(w[r]) * mw[r] for r in range(n))
            row.append(numer / denom)
        rows.append(tuple(row))
    return rows


def _hom_residual(a: Order, sigma) -> mpf:
    n = a.rank
    worst = mpf(0)
    for row in sigma:
        one_val = mp.fsum(c * row[i] for i, c in enumerate(a.one) if c)
        worst = max(worst, abs(one_val - 1))
        for i in range(n):
            for j in range(i, n):
                lin = mp.fsum(
                    t * row[m] for m, t in enumerate(a.table[i][j]) if t
                )
                worst = max(worst, abs(row[i] * row[j] - lin))
    return worst


def gram(e: EmbeddingMatrix, tolerance_exponent: int = DEFAULT_CONFIG.tolerance_exponent) -> GramForm:
    """Gram form of the canonical inner product from an embedding matrix."""
    n = e.n
    if n == 0:
        return GramForm(0, (), e.precision, mpf(0), e.residual)
    with mp.workprec(e.precision):
        entries = [[mpf(0)] * n for _ in range(n)]
        worst_imag = mpf(0)
        for i in range(n):
            for j in range(i, n):
                val = mp.fsum(row[i] * mp.conj(row[j]) for row in e.sigma)
                worst_imag = max(worst_imag, abs(mp.im(val)))
                entries[i][j] = entries[j][i] = mp.re(val)
        biggest = max(abs(x) for row in entries for x in row)
        tol = mpf(2) ** (-(e.precision // tolerance_exponent)) * max(biggest, mpf(1))
        residual = max(e.residual, worst_imag)
    return GramForm(n, tuple(tuple(r) for r in entries), e.precision, tol, residual)


def gram_from_strings(
    rows: Sequence[Sequence[str]],
    precision: int = 192,
    tolerance_exponent: int = DEFAULT_CONFIG.tolerance_exponent,
) -> GramForm:
    """Gram form from decimal-string entries, as used in the JSON exchange
    format.  The matrix must be square and symmetric as given."""
    n = len(rows)
    with mp.workprec(precision):
        entries = tuple(tuple(mpf(x) for x in row) for row in rows)
        if any(len(r) != n for r in entries):
            raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if entries[i][j] != entries[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        biggest = max((abs(x) for row in entries for x in row), default=mpf(1))
        tol = mpf(2) ** (-(precision // tolerance_exponent)) * max(biggest, mpf(1))
    return GramForm(n, entries, precision, tol, mpf(0))


def inner(g: GramForm, u: Sequence[int], v: Sequence[int]) -> mpf:
    """Inner product of two integer coordinate vectors under the form."""
    if len(u) != g.n or len(v) != g.n:
        raise ValueError("vector length does not match the form")
    with mp.workprec(g.precision):
        total = mpf(0)
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = g.entries[i]
            total += ui * mp.fsum(row[j] * vj for j, vj in enumerate(v) if vj)
        return total


def norm(g: GramForm, v: Sequence[int]) -> mpf:
    return inner(g, v, v)


def is_zero(g: GramForm, value: mpf) -> bool:
    """Tolerance verdict on a computed inner product.

    Raises AmbiguousZero when the magnitude falls in the band where neither
    verdict is safe; callers escalate precision on that signal.
    """
    mag = abs(value)
    if mag <= g.tolerance:
        return True
    if mag >= AMBIGUITY_SPAN * g.tolerance:
        return False
    raise AmbiguousZero(
        f"|{mp.nstr(value, 8)}| is inside the ambiguous zero band at {g.precision} bits"
    )


def is_nonneg(g: GramForm, value: mpf) -> bool:
    """Sign verdict used by decomposition tests: is value >= 0 up to the
    tolerance?  Raises AmbiguousSign just below zero, inside the band."""
    if value >= -g.tolerance:
        return True
    if value <= -(AMBIGUITY_SPAN * g.tolerance):
        return False
    raise AmbiguousSign(
        f"{mp.nstr(value, 8)} is inside the ambiguous sign band at {g.precision} bits"
    )


def with_gram(a: Order, config: RunConfig, fn: Callable[[GramForm], T]) -> T:
    """Run fn on the Gram form of a, escalating precision on ambiguity."""
    p = config.precision
    for _ in range(config.escalation_budget + 1):
        e = compute_embeddings(
            a,
            precision=p,
            seed=config.seed,
            escalations=config.escalation_budget,
        )
        g = gram(e, config.tolerance_exponent)
        try:
            return fn(g)
        except EscalationNeeded:
            p = 2 * max(p, e.precision)
    raise PrecisionExhausted(
        f"ambiguous numeric verdicts persisted up to {p // 2} bits"
    )

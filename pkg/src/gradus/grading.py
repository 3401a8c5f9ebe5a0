"""Gradings of orders by finite abelian groups.

A grading splits the order into integer sublattices indexed by group
elements, multiplicatively compatible with the group law.  This module
verifies arbitrary gradings exactly, pushes gradings forward along group
homomorphisms, searches for the unique morphism relating two gradings, and
computes the finest grading that every other grading factors through: the
lattice of a reduced order splits into orthogonal components under its
canonical form, products of components force relations between their
indices, and the quotient group of those relations grades the order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterable, Mapping, Sequence

from .config import DEFAULT_CONFIG, RunConfig
from .embeddings import compute_embeddings, gram
from .errors import (
    AmbiguousMorphism,
    EscalationNeeded,
    InfiniteGroup,
    InfiniteIndex,
    NoMorphism,
    NotReduced,
    PrecisionExhausted,
)
from .intlinalg import (
    IntMatrix,
    SublatticeBasis,
    Vec,
    direct_sum_index,
    hnf,
    snf,
    solve_left,
    stack,
    vec_add,
    vec_scale,
)
from .lattices import SDecomposition, universal_s_decomposition
from .orders import Order, is_reduced, mul

GroupElem = tuple[int, ...]


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group in invariant-factor form.

    Elements are integer tuples, coordinate i taken modulo the i-th factor.
    Factors equal to 1 are dropped on construction, so the trivial group has
    no factors and the empty tuple as its only element.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors if int(d) != 1)
        if any(d < 1 for d in factors):
            raise ValueError("invariant factors must be positive")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def identity(self) -> GroupElem:
        return (0,) * len(self.invariant_factors)

    def order(self) -> int:
        return prod(self.invariant_factors)

    def elements(self) -> list[GroupElem]:
        return list(itertools.product(*(range(d) for d in self.invariant_factors)))

    def contains(self, e: Sequence[int]) -> bool:
        return len(e) == len(self.invariant_factors) and all(
            0 <= c < d for c, d in zip(e, self.invariant_factors)
        )

    def reduce(self, e: Sequence[int]) -> GroupElem:
        return tuple(c % d for c, d in zip(e, self.invariant_factors, strict=True))

    def add(self, a: Sequence[int], b: Sequence[int]) -> GroupElem:
        return self.reduce(vec_add(a, b))

    def neg(self, a: Sequence[int]) -> GroupElem:
        return self.reduce(tuple(-c for c in a))

    def smul(self, k: int, a: Sequence[int]) -> GroupElem:
        return self.reduce(vec_scale(k, a))

    def generators(self) -> tuple[GroupElem, ...]:
        r = len(self.invariant_factors)
        return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))

    def generated_by(self, elems: Iterable[Sequence[int]]) -> bool:
        r = len(self.invariant_factors)
        if r == 0:
            return True
        rows = [tuple(e) for e in elems]
        rows += [vec_scale(d, g) for d, g in zip(self.invariant_factors, self.generators())]
        h, _ = hnf(IntMatrix.from_rows(rows, r))
        pivots = [next((x for x in row if x), 0) for row in h.entries if any(row)]
        return len(pivots) == r and prod(pivots) == 1


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between invariant-factor groups, stored as the images of
    the source generators."""

    source: FinAbGroup
    target: FinAbGroup
    images: tuple[GroupElem, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source.invariant_factors):
            raise ValueError("one image per source generator is required")
        for d, img in zip(self.source.invariant_factors, self.images):
            if not self.target.contains(img):
                raise ValueError("image is not a target element")
            if any(self.target.smul(d, img)):
                raise ValueError("images do not respect the source relations")

    @classmethod
    def identity(cls, group: FinAbGroup) -> "GroupHom":
        return cls(group, group, group.generators())

    @classmethod
    def trivial(cls, source: FinAbGroup, target: FinAbGroup) -> "GroupHom":
        return cls(source, target, tuple(target.identity for _ in source.invariant_factors))

    def apply(self, e: Sequence[int]) -> GroupElem:
        out = self.target.identity
        for c, img in zip(e, self.images, strict=True):
            out = self.target.add(out, self.target.smul(c, img))
        return out

    def is_bijective(self) -> bool:
        if self.source.order() != self.target.order():
            return False
        return len({self.apply(e) for e in self.source.elements()}) == self.source.order()


@dataclass(frozen=True)
class Grading:
    """A grading of an order: nonzero pieces keyed by group elements.

    Pieces are kept in canonical Hermite form and sorted by group element,
    so structural equality is equality of gradings.
    """

    order: Order
    group: FinAbGroup
    pieces: tuple[tuple[GroupElem, SublatticeBasis], ...]

    def piece(self, e: Sequence[int]) -> SublatticeBasis | None:
        e = tuple(e)
        for elem, basis in self.pieces:
            if elem == e:
                return basis
        return None

    def support(self) -> tuple[GroupElem, ...]:
        return tuple(e for e, _ in self.pieces)


def make_grading(
    order: Order, group: FinAbGroup, piece_rows: Mapping[GroupElem, Iterable[Sequence[int]]]
) -> Grading:
    pieces = []
    for elem, rows in piece_rows.items():
        elem = tuple(elem)
        if not group.contains(elem):
            raise ValueError(f"{elem} is not an element of the grading group")
        basis = SublatticeBasis.from_vectors(order.rank, rows)
        if basis.rank:
            pieces.append((elem, basis))
    pieces.sort(key=lambda p: p[0])
    return Grading(order, group, tuple(pieces))


@dataclass(frozen=True)
class GradedOrder:
    """Universal grading together with the lattice splitting it came from
    and the map sending each splitting component to its group element."""

    grading: Grading
    decomposition: SDecomposition
    component_images: tuple[GroupElem, ...]


@dataclass(frozen=True)
class GradingReport:
    ok: bool
    identity_ok: bool
    closure_ok: bool
    closure_failures: tuple[tuple[GroupElem, GroupElem], ...]
    ranks_additive: bool
    index: int | None


def group_from_relations(
    num_gens: int, relations: Iterable[Sequence[int]]
) -> tuple[FinAbGroup, tuple[GroupElem, ...]]:
    """Finite abelian group presented on num_gens generators by additive
    relation vectors; returns the group and the images of the generators.

    Raises InfiniteGroup when the presented group is infinite.
    """
    rel_rows = sorted({tuple(int(x) for x in r) for r in relations})
    if any(len(r) != num_gens for r in rel_rows):
        raise ValueError("relation length does not match the generator count")
    if num_gens == 0:
        return FinAbGroup(()), ()
    if not rel_rows:
        raise InfiniteGroup("no relations on a positive number of generators")
    s, _, v = snf(IntMatrix.from_rows(rel_rows, num_gens))
    diag = [s.entries[i][i] for i in range(min(len(rel_rows), num_gens))]
    diag += [0] * (num_gens - len(diag))
    if any(d == 0 for d in diag):
        raise InfiniteGroup("presentation has a free quotient")
    keep = [i for i, d in enumerate(diag) if d >= 2]
    group = FinAbGroup(tuple(diag[i] for i in keep))
    images = tuple(
        tuple(v.entries[j][i] % diag[i] for i in keep) for j in range(num_gens)
    )
    return group, images


def verify_grading(a: Order, gr: Grading) -> GradingReport:
    """Exact verdict on the grading axioms; no floating point involved."""
    if gr.order != a:
        raise ValueError("grading refers to a different order")
    if any(basis.ambient_rank != a.rank for _, basis in gr.pieces):
        raise ValueError("piece ambient rank does not match the order")
    ranks_additive = sum(b.rank for _, b in gr.pieces) == a.rank
    try:
        index = direct_sum_index([b for _, b in gr.pieces], a.rank)
    except InfiniteIndex:
        index = None
    if a.rank == 0:
        identity_ok = True
        index = 1 if index is None else index
        ranks_additive = True
    else:
        idp = gr.piece(gr.group.identity)
        identity_ok = idp is not None and idp.contains(a.one)
    failures = []
    for (e1, p1), (e2, p2) in itertools.combinations_with_replacement(gr.pieces, 2):
        target = gr.group.add(e1, e2)
        tgt = gr.piece(target)
        good = True
        for u in p1.vectors():
            for v in p2.vectors():
                w = mul(a, u, v)
                if not any(w):
                    continue
                if tgt is None or not tgt.contains(w):
                    good = False
                    break
            if not good:
                break
        if not good:
            failures.append((e1, e2))
    closure_ok = not failures
    ok = identity_ok and closure_ok and ranks_additive and index == 1
    return GradingReport(ok, identity_ok, closure_ok, tuple(failures), ranks_additive, index)


def push_forward(gr: Grading, f: GroupHom) -> Grading:
    """Grading obtained by summing pieces over the fibers of f."""
    if f.source != gr.group:
        raise ValueError("homomorphism source does not match the grading group")
    rows_by: dict[GroupElem, list[Vec]] = {}
    for elem, basis in gr.pieces:
        rows_by.setdefault(f.apply(elem), []).extend(basis.vectors())
    return make_grading(gr.order, f.target, rows_by)


def homogeneous_parts(gr: Grading, x: Sequence[int]) -> dict[GroupElem, Vec]:
    """Unique splitting of x as a sum of one element per piece; returns the
    nonzero parts keyed by group element."""
    n = gr.order.rank
    if len(x) != n:
        raise ValueError("element length does not match the order")
    tags: list[GroupElem] = []
    rows: list[Vec] = []
    for elem, basis in gr.pieces:
        for v in basis.vectors():
            tags.append(elem)
            rows.append(v)
    coeffs = solve_left(IntMatrix.from_rows(rows, n), x)
    if coeffs is None:
        raise ValueError("the pieces do not split the ambient lattice")
    parts: dict[GroupElem, Vec] = {}
    for c, elem, row in zip(coeffs, tags, rows):
        if c:
            parts[elem] = vec_add(parts.get(elem, (0,) * n), vec_scale(c, row))
    return {e: p for e, p in parts.items() if any(p)}


def is_homogeneous_element(gr: Grading, x: Sequence[int]) -> bool:
    return len(homogeneous_parts(gr, x)) <= 1


def is_homogeneous_sublattice(gr: Grading, h: SublatticeBasis) -> bool:
    """Whether h is the direct sum of its intersections with the pieces,
    i.e. every homogeneous part of every member of h lies in h."""
    if h.ambient_rank != gr.order.rank:
        raise ValueError("sublattice does not live in the graded order")
    for v in h.vectors():
        for part in homogeneous_parts(gr, v).values():
            if not h.contains(part):
                return False
    return True


def find_morphism(u: GradedOrder, c: Grading) -> GroupHom:
    """The unique homomorphism f with push_forward(u, f) == c.

    Locates, for each supported element of u, the piece of c containing it,
    extends along the group generators, and verifies the result exactly.
    Raises AmbiguousMorphism when a piece lands in no or several pieces of c
    and NoMorphism when no homomorphism reproduces c.
    """
    gu = u.grading
    if gu.order != c.order:
        raise ValueError("gradings refer to different orders")
    gam, delta = gu.group, c.group
    placement: dict[GroupElem, GroupElem] = {}
    for elem, basis in gu.pieces:
        hits = [d for d, cb in c.pieces if cb.contains_sublattice(basis)]
        if len(hits) != 1:
            raise AmbiguousMorphism(
                f"piece at {elem} is contained in {len(hits)} pieces of the target grading"
            )
        placement[elem] = hits[0]
    r = len(gam.invariant_factors)
    support = list(placement)
    if r == 0:
        images: tuple[GroupElem, ...] = ()
    else:
        rows = [tuple(e) for e in support]
        rows += [
            vec_scale(d, g) for d, g in zip(gam.invariant_factors, gam.generators())
        ]
        m = IntMatrix.from_rows(rows, r)
        image_list = []
        for gen in gam.generators():
            sol = solve_left(m, gen)
            if sol is None:
                raise NoMorphism("support of the grading does not generate its group")
            img = delta.identity
            for coeff, s in zip(sol[: len(support)], support):
                img = delta.add(img, delta.smul(coeff, placement[s]))
            image_list.append(img)
        images = tuple(image_list)
    try:
        f = GroupHom(gam, delta, images)
    except ValueError as exc:
        raise NoMorphism(f"candidate images do not define a homomorphism: {exc}") from exc
    for elem in support:
        if f.apply(elem) != placement[elem]:
            raise NoMorphism("candidate homomorphism disagrees with the piece placement")
    if push_forward(gu, f) != c:
        raise NoMorphism("pushforward along the candidate does not reproduce the grading")
    return f


def universal_grading(a: Order, config: RunConfig | None = None) -> GradedOrder:
    """The grading of a reduced order that every grading factors through.

    Pipeline: embeddings -> Gram form -> finest orthogonal lattice splitting
    -> relations from products of component vectors -> presented group ->
    pieces summed per group element.  The result is verified exactly; any
    inconsistency triggers a precision escalation and retry.
    """
    config = config or DEFAULT_CONFIG
    if not is_reduced(a):
        raise NotReduced("only reduced orders admit this computation")
    p = config.precision
    last: Exception | None = None
    for _ in range(config.escalation_budget + 1):
        e = compute_embeddings(
            a, precision=p, seed=config.seed, escalations=config.escalation_budget
        )
        g = gram(e, config.tolerance_exponent)
        try:
            return _grading_from_gram(a, g, config)
        except (EscalationNeeded, InfiniteGroup) as exc:
            last = exc
            p = 2 * max(p, e.precision)
    raise PrecisionExhausted(f"grading pipeline did not stabilize: {last}")


def _grading_from_gram(a: Order, g, config: RunConfig) -> GradedOrder:
    dec = universal_s_decomposition(g, config.enumeration_cap)
    comps = dec.components
    k = len(comps)
    if k == 0:
        grading = Grading(a, FinAbGroup(()), ())
        return GradedOrder(grading, dec, ())
    stacked = stack([c.basis for c in comps], cols=a.rank)
    offsets = [0]
    for c in comps:
        offsets.append(offsets[-1] + c.rank)
    relations: set[tuple[int, ...]] = set()
    for s1 in range(k):
        for s2 in range(s1, k):
            for x in comps[s1].vectors():
                for y in comps[s2].vectors():
                    coeffs = solve_left(stacked, mul(a, x, y))
                    if coeffs is None:
                        raise EscalationNeeded("component sum lost full index during relations")
                    for s3 in range(k):
                        if any(coeffs[offsets[s3]:offsets[s3 + 1]]):
                            row = [0] * k
                            row[s1] += 1
                            row[s2] += 1
                            row[s3] -= 1
                            relations.add(tuple(row))
    group, images = group_from_relations(k, sorted(relations))
    rows_by: dict[GroupElem, list[Vec]] = {}
    for img, comp in zip(images, comps):
        rows_by.setdefault(img, []).extend(comp.vectors())
    grading = make_grading(a, group, rows_by)
    report = verify_grading(a, grading)
    if not report.ok:
        raise EscalationNeeded(f"assembled grading failed exact verification: {report}")
    if not group.generated_by(grading.support()):
        raise EscalationNeeded("support of the assembled grading does not generate the group")
    return GradedOrder(grading, dec, images)


def grading_to_json(gr: Grading, component_images: Sequence[GroupElem] | None = None) -> dict:
    data = {
        "group": {"invariant_factors": list(gr.group.invariant_factors)},
        "pieces": [
            {"element": list(elem), "basis": [list(v) for v in basis.vectors()]}
            for elem, basis in gr.pieces
        ],
        "generator_map": [list(e) for e in component_images] if component_images else [],
    }
    return data


def grading_from_json(order: Order, data: dict) -> Grading:
    group = FinAbGroup(tuple(data["group"]["invariant_factors"]))
    rows_by: dict[GroupElem, list[Sequence[int]]] = {}
    for item in data["pieces"]:
        rows_by.setdefault(tuple(item["element"]), []).extend(item["basis"])
    return make_grading(order, group, rows_by)

"""Partial permutations and permutoids.

A partial permutation of X = {0, ..., n-1} is an injective map between two
non-empty subsets of X.  A permutoid is a finite set of partial permutations
containing the full identity, in which every defined composition p.q has at
most one extension inside the set.  That unique extension (the "witness") is
always *derived* from the graphs; it is never stored as independent data, so
it cannot be asserted falsely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import (
    GroundSetTooLarge,
    MorphismError,
    ValidationError,
)


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self):
        return self._name


#: Composing p.q when ran(q) and dom(p) are disjoint yields no map at all.
#: This is a distinguished non-error outcome, not an exception.
EMPTY_COMPOSITION = _Sentinel("EMPTY_COMPOSITION")

#: The composition is defined but no element of the permutoid extends it.
NO_WITNESS = _Sentinel("NO_WITNESS")

#: The composition itself is undefined (empty overlap).
UNDEFINED = _Sentinel("UNDEFINED")

Pair = tuple[int, int]
Graph = tuple[Pair, ...]

#: Relabelings are enumerated exhaustively, so cap the ground size.
CANONICAL_CAP = 10


@dataclass(frozen=True)
class PartialPermutation:
    """An injective map between two non-empty subsets of {0, ..., n-1}.

    ``pairs`` is the graph, kept sorted by first coordinate.  Construction
    validates non-emptiness, functionality and injectivity.
    """

    ground_size: int
    pairs: Graph

    def __post_init__(self):
        if self.ground_size < 1:
            raise ValidationError("BadGroundSize", f"ground_size must be >= 1, got {self.ground_size}")
        pairs = tuple(sorted((int(x), int(y)) for x, y in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValidationError("EmptyElement", "a partial permutation must be non-empty")
        seen_x, seen_y = set(), set()
        for x, y in pairs:
            if not (0 <= x < self.ground_size and 0 <= y < self.ground_size):
                raise ValidationError("OutOfRange", f"pair ({x},{y}) outside ground set", pair=(x, y))
            if x in seen_x:
                raise ValidationError("NotFunctional", f"point {x} has two images", point=x)
            if y in seen_y:
                raise ValidationError("NotInjective", f"value {y} has two preimages", value=y)
            seen_x.add(x)
            seen_y.add(y)

    @classmethod
    def from_pairs(cls, ground_size: int, pairs: Iterable[Iterable[int]]) -> "PartialPermutation":
        return cls(ground_size, tuple((x, y) for x, y in pairs))

    @cached_property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    @cached_property
    def domain(self) -> frozenset[int]:
        return frozenset(x for x, _ in self.pairs)

    @cached_property
    def range(self) -> frozenset[int]:
        return frozenset(y for _, y in self.pairs)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def is_full(self) -> bool:
        return len(self.pairs) == self.ground_size

    def is_identity(self) -> bool:
        return self.is_full() and all(x == y for x, y in self.pairs)

    def inverse(self) -> "PartialPermutation":
        return PartialPermutation(self.ground_size, tuple((y, x) for x, y in self.pairs))

    def restrict(self, points: Iterable[int]) -> Union["PartialPermutation", None]:
        """Restriction to ``points``; None when the restriction is empty."""
        sub = tuple((x, y) for x, y in self.pairs if x in set(points))
        if not sub:
            return None
        return PartialPermutation(self.ground_size, sub)

    def extends(self, other: "PartialPermutation") -> bool:
        """True when this map agrees with ``other`` on all of other's domain."""
        if self.ground_size != other.ground_size:
            return False
        m = self.mapping
        return all(m.get(x) == y for x, y in other.pairs)

    def extends_graph(self, graph: Graph) -> bool:
        m = self.mapping
        return all(m.get(x) == y for x, y in graph)


def identity_map(ground_size: int) -> PartialPermutation:
    return PartialPermutation(ground_size, tuple((x, x) for x in range(ground_size)))


def compose_partial(p: PartialPermutation, q: PartialPermutation):
    """The composition p.q with (p.q)(x) = p(q(x)), q applied first.

    Defined on {x in dom(q) : q(x) in dom(p)}; returns EMPTY_COMPOSITION
    when that set is empty.
    """
    if p.ground_size != q.ground_size:
        from .errors import GroundSetMismatch

        raise GroundSetMismatch(f"ground sizes differ: {p.ground_size} vs {q.ground_size}")
    pm = p.mapping
    pairs = tuple((x, pm[y]) for x, y in q.pairs if y in pm)
    if not pairs:
        return EMPTY_COMPOSITION
    return PartialPermutation(p.ground_size, pairs)


@dataclass(frozen=True)
class Permutoid:
    """A validated set of partial permutations with the unique-extension rule.

    Construct through :func:`validate_permutoid`; direct construction skips
    validation and is for internal use.
    """

    ground_size: int
    elements: tuple[PartialPermutation, ...]
    identity_index: int

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    @cached_property
    def witness_table(self) -> dict[tuple[int, int], object]:
        """(i, j) -> witness index, NO_WITNESS, or UNDEFINED, for all pairs."""
        table: dict[tuple[int, int], object] = {}
        for i, p in enumerate(self.elements):
            for j, q in enumerate(self.elements):
                comp = compose_partial(p, q)
                if comp is EMPTY_COMPOSITION:
                    table[(i, j)] = UNDEFINED
                    continue
                found = NO_WITNESS
                for k, r in enumerate(self.elements):
                    if r.extends(comp):
                        found = k
                        break
                table[(i, j)] = found
        return table

    def witness(self, i: int, j: int):
        return self.witness_table[(i, j)]


def witness_triples(P: Permutoid) -> list[tuple[int, int, int]]:
    """All (p, q, r) with r the unique element extending p.q, sorted."""
    return sorted(
        (i, j, k)
        for (i, j), k in P.witness_table.items()
        if isinstance(k, int)
    )


ElementsInput = Sequence[Union[PartialPermutation, Iterable[Iterable[int]]]]


def validate_permutoid(ground_size: int, elements: ElementsInput) -> Permutoid:
    """Check the permutoid clauses and return the validated object.

    Raises ValidationError naming the first violated clause: EmptyElement,
    NotFunctional, NotInjective (per element), MissingIdentity,
    DuplicateElement, or UniqueExtensionViolated.
    """
    if not elements:
        raise ValidationError("MissingIdentity", "no elements given")
    parsed: list[PartialPermutation] = []
    for i, el in enumerate(elements):
        if isinstance(el, PartialPermutation):
            if el.ground_size != ground_size:
                raise ValidationError("OutOfRange", f"element {i} has wrong ground size", element=i)
            parsed.append(el)
        else:
            try:
                parsed.append(PartialPermutation.from_pairs(ground_size, el))
            except ValidationError as exc:
                raise ValidationError(exc.code, f"element {i}: {exc}", element=i, **exc.details) from None

    identity_index = None
    for i, el in enumerate(parsed):
        if el.is_identity():
            identity_index = i
            break
    if identity_index is None:
        raise ValidationError("MissingIdentity", "the full identity map is not among the elements")

    seen: dict[Graph, int] = {}
    for i, el in enumerate(parsed):
        if el.pairs in seen:
            raise ValidationError(
                "DuplicateElement",
                f"elements {seen[el.pairs]} and {i} have equal graphs",
                first=seen[el.pairs],
                second=i,
            )
        seen[el.pairs] = i

    for i, p in enumerate(parsed):
        for j, q in enumerate(parsed):
            comp = compose_partial(p, q)
            if comp is EMPTY_COMPOSITION:
                continue
            witnesses = [k for k, r in enumerate(parsed) if r.extends(comp)]
            if len(witnesses) > 1:
                raise ValidationError(
                    "UniqueExtensionViolated",
                    f"composition of elements {i} and {j} is extended by "
                    f"both {witnesses[0]} and {witnesses[1]}",
                    p=i,
                    q=j,
                    r1=witnesses[0],
                    r2=witnesses[1],
                )

    return Permutoid(ground_size, tuple(parsed), identity_index)


def extension_witness(P: Permutoid, p_index: int, q_index: int):
    """The unique element index extending elements[p].elements[q].

    Returns NO_WITNESS when the composition is defined but nothing extends
    it, UNDEFINED when the composition is empty.
    """
    return P.witness(p_index, q_index)


def is_rigid_permutoid(P: Permutoid) -> bool:
    """True iff no two distinct elements agree at any point."""
    els = P.elements
    for i in range(len(els)):
        mi = els[i].mapping
        for j in range(i + 1, len(els)):
            for x, y in els[j].pairs:
                if mi.get(x) == y:
                    return False
    return True


# -- morphisms ----------------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    """A pair of maps (element_map, point_map) between permutoids."""

    source: Permutoid
    target: Permutoid
    point_map: tuple[int, ...]
    element_map: tuple[int, ...]


@dataclass(frozen=True)
class MorphismKind:
    is_isomorphism: bool
    is_quotient: bool
    is_extension: bool
    is_complete_extension: bool


def validate_morphism(m: Morphism) -> MorphismKind:
    """Verify the three morphism clauses, then classify the morphism.

    Clause 1: the identity element maps to the identity element.
    Clause 2: point images land in the right domains and commute with
    the element maps.
    Clause 3: witness triples map to extending triples in the target.
    """
    src, tgt = m.source, m.target
    if len(m.point_map) != src.ground_size or any(
        not (0 <= v < tgt.ground_size) for v in m.point_map
    ):
        raise MorphismError("BadPointMap", "point_map is not a total map into the target ground set")
    if len(m.element_map) != len(src.elements) or any(
        not (0 <= v < len(tgt.elements)) for v in m.element_map
    ):
        raise MorphismError("BadElementMap", "element_map is not a total map into the target elements")

    if m.element_map[src.identity_index] != tgt.identity_index:
        raise MorphismError("IdentityNotPreserved", "identity element does not map to the identity")

    for i, p in enumerate(src.elements):
        image = tgt.elements[m.element_map[i]]
        im = image.mapping
        for x, y in p.pairs:
            fx = m.point_map[x]
            if fx not in im or im[fx] != m.point_map[y]:
                raise MorphismError(
                    "EquivarianceViolated",
                    f"element {i} at point {x}: images do not commute",
                    element=i,
                    point=x,
                )

    for (i, j), k in src.witness_table.items():
        if not isinstance(k, int):
            continue
        tp = tgt.elements[m.element_map[i]]
        tq = tgt.elements[m.element_map[j]]
        comp = compose_partial(tp, tq)
        if comp is EMPTY_COMPOSITION or not tgt.elements[m.element_map[k]].extends(comp):
            raise MorphismError(
                "CompositionNotPreserved",
                f"triple ({i},{j},{k}) is not preserved",
                p=i,
                q=j,
                r=k,
            )

    point_injective = len(set(m.point_map)) == src.ground_size
    point_surjective = len(set(m.point_map)) == tgt.ground_size
    elem_surjective = len(set(m.element_map)) == len(tgt.elements)
    elem_injective = len(set(m.element_map)) == len(src.elements)

    is_extension = point_injective
    is_quotient = point_surjective and elem_surjective
    is_complete = is_extension and all(e.is_full() for e in tgt.elements)

    is_iso = False
    if point_injective and point_surjective and elem_injective and elem_surjective:
        # conjugation condition: image of p equals point_map . p . point_map^-1
        is_iso = all(
            tgt.elements[m.element_map[i]].pairs
            == tuple(sorted((m.point_map[x], m.point_map[y]) for x, y in p.pairs))
            for i, p in enumerate(src.elements)
        )

    return MorphismKind(is_iso, is_quotient, is_extension, is_complete)


# -- canonical forms -----------------------------------------------------------

def _point_signatures(P: Permutoid) -> list[tuple[int, int, int]]:
    sigs = [[0, 0, 0] for _ in range(P.ground_size)]
    for el in P.elements:
        for x, y in el.pairs:
            sigs[x][0] += 1
            sigs[y][1] += 1
            if x == y:
                sigs[x][2] += 1
    return [tuple(s) for s in sigs]


def canonical_form(P: Permutoid, cap: int = CANONICAL_CAP) -> bytes:
    """A key equal for two permutoids iff they are isomorphic.

    Defined as the lexicographic minimum, over relabelings of the ground
    set, of a fixed serialization.  Only relabelings ordering points by an
    isomorphism-invariant degree signature can attain the minimum, which
    prunes the search without changing the key.
    """
    n = P.ground_size
    if n > cap:
        raise GroundSetTooLarge(f"ground size {n} exceeds canonicalization cap {cap}")

    sigs = _point_signatures(P)
    groups: dict[tuple[int, int, int], list[int]] = {}
    for x, sig in enumerate(sigs):
        groups.setdefault(sig, []).append(x)
    blocks = [groups[s] for s in sorted(groups)]

    graphs = [el.pairs for el in P.elements]
    best = None
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        relabel = [0] * n
        new = 0
        for block in perms:
            for x in block:
                relabel[x] = new
                new += 1
        key = tuple(
            sorted(
                tuple(sorted((relabel[x], relabel[y]) for x, y in g))
                for g in graphs
            )
        )
        if best is None or key < best:
            best = key
    return repr((n, len(graphs), best)).encode()


# -- quotient enumeration ------------------------------------------------------

def _set_partitions(n: int):
    """All partitions of range(n) as class-index lists, in restricted
    growth string order (the one-class partition first, singletons last)."""
    a = [0] * n

    def rec(i: int, maxi: int):
        if i == n:
            yield list(a)
            return
        for c in range(maxi + 2):
            a[i] = c
            yield from rec(i + 1, max(maxi, c))

    if n == 0:
        yield []
        return
    yield from rec(1, 0) if n > 1 else iter([[0]])


def quotient_by_partition(P: Permutoid, class_of: Sequence[int]):
    """Induced quotient for one equivalence relation, or None if it fails.

    Returns (quotient, morphism) when every element induces a well-defined
    injective map on classes and the induced data passes both validators.
    """
    n_classes = max(class_of) + 1
    induced_graphs: list[Graph] = []
    element_map: list[int] = []
    index_of: dict[Graph, int] = {}
    for el in P.elements:
        img: dict[int, int] = {}
        values = set()
        for x, y in el.pairs:
            cx, cy = class_of[x], class_of[y]
            if img.get(cx, cy) != cy:
                return None
            if cx not in img:
                if cy in values:
                    return None
                img[cx] = cy
                values.add(cy)
        graph = tuple(sorted(img.items()))
        if graph not in index_of:
            index_of[graph] = len(induced_graphs)
            induced_graphs.append(graph)
        element_map.append(index_of[graph])

    try:
        quotient = validate_permutoid(n_classes, induced_graphs)
    except ValidationError:
        return None
    morphism = Morphism(P, quotient, tuple(class_of), tuple(element_map))
    try:
        validate_morphism(morphism)
    except MorphismError:
        return None
    for i, p in enumerate(P.elements):
        image = quotient.elements[element_map[i]]
        assert image.domain == frozenset(class_of[x] for x in p.domain)
    return quotient, morphism


def enumerate_quotients(
    P: Permutoid, nontrivial_only: bool = False, cap: int = CANONICAL_CAP
) -> list[tuple[Permutoid, Morphism]]:
    """One representative per isomorphism class of partition-induced quotient.

    Every equivalence relation on the ground set is tried; a relation
    survives when each element descends to a well-defined injective map on
    classes and the induced data validates as a permutoid and a quotient
    morphism.  The identity relation (P itself) is included.  With
    ``nontrivial_only`` the quotients whose element set is just the identity
    are dropped.
    """
    if P.ground_size > cap:
        raise GroundSetTooLarge(
            f"ground size {P.ground_size} exceeds canonicalization cap {cap}"
        )
    out: list[tuple[Permutoid, Morphism]] = []
    seen_keys: set[bytes] = set()
    for class_of in _set_partitions(P.ground_size):
        result = quotient_by_partition(P, class_of)
        if result is None:
            continue
        quotient, morphism = result
        if nontrivial_only and quotient.is_trivial:
            continue
        key = canonical_form(quotient, cap=cap)
        if key in seen_keys:
            continue
        seen_keys.add(key)
        out.append((quotient, morphism))
    return out

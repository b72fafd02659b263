"""Finite pseudogroups of partial bijections, rigidity, and rigid developments.

A pseudogroup here is represented by its antichain of maximal elements: the
set of all non-empty restrictions of those maps is closed under identity,
inverse, composition, and restriction.  Restriction-closure is implicit (it
would be exponential to materialize), and all operations factor through the
maximal elements.

Rigidity means no two distinct maximal elements agree at any point;
equivalently every member has a unique maximal extension.  A development of
a rigid pseudogroup embeds the ground set into a finite set carrying a free
group action whose transformations extend all maximal elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import (
    EMPTY_COMPOSITION,
    Morphism,
    PartialPermutation,
    Permutoid,
    compose_partial,
    identity_map,
    validate_morphism,
    validate_permutoid,
)
from .develop import (
    BudgetExceeded,
    DevelopmentProblem,
    ExhaustedUpTo,
    Found,
    SearchVerdict,
    _BudgetExhausted,
    iter_developments,
    verify_development,
)
from .errors import (
    GroundSetMismatch,
    GroupClosureCapExceeded,
    NotAnAction,
    NotFree,
    NotRigid,
    PseudogroupError,
)


@dataclass(frozen=True)
class Pseudogroup:
    """Maximal elements of a pseudogroup, kept as a sorted antichain that
    contains the full identity and is closed under inverses and (up to
    restriction) compositions."""

    ground_size: int
    maximal_elements: tuple[PartialPermutation, ...]

    def member(self, f: PartialPermutation) -> bool:
        if f.ground_size != self.ground_size:
            raise GroundSetMismatch(
                f"ground sizes differ: {f.ground_size} vs {self.ground_size}"
            )
        return any(m.extends(f) for m in self.maximal_elements)


def _antichain_insert(chain: list[PartialPermutation], f: PartialPermutation) -> bool:
    """Insert unless dominated; drop newly dominated members.  True if changed."""
    for m in chain:
        if m.extends(f):
            return False
    chain[:] = [m for m in chain if not f.extends(m)]
    chain.append(f)
    return True


def generate_pseudogroup(
    ground_size: int, generators: Iterable[PartialPermutation]
) -> Pseudogroup:
    """Saturate the generators (plus the identity) under inverses and
    non-empty pairwise compositions, keeping only maximal elements.

    Downward closure then realizes restriction-closure: a restriction of a
    composition is a restriction of the composition of the extensions.
    """
    chain: list[PartialPermutation] = [identity_map(ground_size)]
    for g in generators:
        if g.ground_size != ground_size:
            raise GroundSetMismatch(
                f"generator has ground size {g.ground_size}, expected {ground_size}"
            )
        _antichain_insert(chain, g)
    changed = True
    while changed:
        changed = False
        snapshot = sorted(chain, key=lambda m: m.pairs)
        for m in snapshot:
            if _antichain_insert(chain, m.inverse()):
                changed = True
        for m1 in snapshot:
            for m2 in snapshot:
                comp = compose_partial(m1, m2)
                if comp is EMPTY_COMPOSITION:
                    continue
                if _antichain_insert(chain, comp):
                    changed = True
    return Pseudogroup(ground_size, tuple(sorted(chain, key=lambda m: m.pairs)))


def check_pseudogroup(H: Pseudogroup) -> None:
    """Well-formedness: antichain, identity present, inverse-closed, and
    every non-empty composition a restriction of some member."""
    members = H.maximal_elements
    graphs = {m.pairs for m in members}
    if len(graphs) != len(members):
        raise PseudogroupError("DuplicateElement", "maximal elements must be distinct")
    if identity_map(H.ground_size).pairs not in graphs:
        raise PseudogroupError("MissingIdentity", "the full identity must be maximal")
    for m in members:
        if m.ground_size != H.ground_size:
            raise PseudogroupError("GroundSetMismatch", "mixed ground sizes")
        if m.inverse().pairs not in graphs:
            raise PseudogroupError("NotInverseClosed", "maximal elements must include inverses")
    for i, m1 in enumerate(members):
        for j, m2 in enumerate(members):
            if i != j and m1.extends(m2):
                raise PseudogroupError("NotAntichain", f"element {j} restricts element {i}")
            comp = compose_partial(m1, m2)
            if comp is EMPTY_COMPOSITION:
                continue
            if not any(m.extends(comp) for m in members):
                raise PseudogroupError(
                    "NotClosed", f"composition of elements {i} and {j} escapes the antichain"
                )


def pseudogroup_membership(H: Pseudogroup, f: PartialPermutation) -> bool:
    """True iff f is a restriction of some maximal element."""
    return H.member(f)


def is_rigid_pseudogroup(H: Pseudogroup) -> bool:
    """True iff no two distinct maximal elements agree at any point."""
    members = H.maximal_elements
    for i in range(len(members)):
        mi = members[i].mapping
        for j in range(i + 1, len(members)):
            for x, y in members[j].pairs:
                if mi.get(x) == y:
                    return False
    return True


def maximal_permutoid(H: Pseudogroup) -> Permutoid:
    """The maximal elements as a permutoid.  Rigidity makes composition
    witnesses unique, so validation always succeeds; non-rigid input raises
    NotRigid."""
    if not is_rigid_pseudogroup(H):
        raise NotRigid("two maximal elements agree at a point")
    return validate_permutoid(H.ground_size, H.maximal_elements)


def extend_to_maximal(pi: Permutoid, H: Pseudogroup | None = None) -> Morphism:
    """The extension sending each element to its unique maximal extension
    in the generated pseudogroup (identity on points)."""
    if H is None:
        H = generate_pseudogroup(pi.ground_size, pi.elements)
    target = maximal_permutoid(H)
    element_map = []
    for p in pi.elements:
        hits = [k for k, m in enumerate(target.elements) if m.extends(p)]
        if not hits:
            raise PseudogroupError("NotAMember", "an element has no maximal extension in H")
        assert len(hits) == 1, "rigidity forces a unique maximal extension"
        element_map.append(hits[0])
    morphism = Morphism(
        pi, target, tuple(range(pi.ground_size)), tuple(element_map)
    )
    kind = validate_morphism(morphism)
    assert kind.is_extension
    return morphism


def group_action_pseudogroup(
    group, action: Sequence[Sequence[int]]
) -> Pseudogroup:
    """The rigid pseudogroup of restrictions of a free group action.

    ``action`` assigns a permutation of Y to every group element index;
    it must respect the multiplication table, and no non-identity element
    may fix a point.
    """
    n = group.order
    if len(action) != n:
        raise NotAnAction("need one permutation per group element")
    degree = len(action[0])
    perms = []
    for i, perm in enumerate(action):
        perm = tuple(perm)
        if len(perm) != degree or sorted(perm) != list(range(degree)):
            raise NotAnAction(f"image of element {i} is not a permutation", element=i)
        perms.append(perm)
    if perms[0] != tuple(range(degree)):
        raise NotAnAction("identity element must act as the identity", element=0)
    for i in range(n):
        for j in range(n):
            composed = tuple(perms[i][perms[j][x]] for x in range(degree))
            if composed != perms[group.table[i][j]]:
                raise NotAnAction(f"action breaks at product ({i},{j})", g=i, h=j)
    for i in range(1, n):
        for y in range(degree):
            if perms[i][y] == y:
                raise NotFree(f"element {i} fixes point {y}", element=i, point=y)
    members = tuple(
        sorted(
            (PartialPermutation(degree, tuple(enumerate(perm))) for perm in perms),
            key=lambda m: m.pairs,
        )
    )
    H = Pseudogroup(degree, members)
    assert is_rigid_pseudogroup(H)
    return H


# -- rigid developments -----------------------------------------------------------

@dataclass(frozen=True)
class RigidDevelopment:
    """A free action extending every maximal element.

    ``group_permutations`` is the closure of the assigned permutations
    (identity first, then sorted); ``assignment`` gives, per maximal
    element, the unique group permutation extending it.
    """

    ground_size: int
    group_permutations: tuple[tuple[int, ...], ...]
    assignment: tuple[tuple[int, ...], ...]

    @property
    def group_order(self) -> int:
        return len(self.group_permutations)


def _closure(perms: Iterable[tuple[int, ...]], degree: int, cap: int) -> set:
    gens = list(perms)
    identity = tuple(range(degree))
    closure = {identity}
    frontier = [identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))
            if y not in closure:
                if len(closure) >= cap:
                    raise GroupClosureCapExceeded(f"group closure exceeded cap {cap}")
                closure.add(y)
                frontier.append(y)
    return closure


def verify_rigid_development(H: Pseudogroup, rd: RigidDevelopment) -> None:
    """Independent check of the rigid development invariants."""
    identity = tuple(range(rd.ground_size))
    for perm in rd.group_permutations:
        if perm != identity and any(perm[y] == y for y in range(rd.ground_size)):
            raise NotFree("a non-identity group element has a fixed point")
    if len(rd.assignment) != len(H.maximal_elements):
        raise PseudogroupError("WrongShape", "one assigned permutation per maximal element")
    for m, perm in zip(H.maximal_elements, rd.assignment):
        if any(perm[x] != y for x, y in m.pairs):
            raise PseudogroupError("NotExtending", "assigned permutation does not extend its element")
        if perm not in rd.group_permutations:
            raise PseudogroupError("NotInGroup", "assigned permutation missing from the closure")


def search_rigid_development(
    H: Pseudogroup,
    max_ground: int,
    node_budget: int | None = None,
    group_cap: int = 100_000,
    deterministic: bool = True,
) -> SearchVerdict | None:
    """Search for a development whose assigned permutations generate a
    fixed-point-free (on non-identity elements) group.

    Runs the development search on the maximal-element permutoid and filters
    complete assignments by closing them into a permutation group and
    checking freeness at the leaves.
    """
    target = maximal_permutoid(H)  # NotRigid propagates
    prob = DevelopmentProblem(target, max_ground, node_budget, deterministic)
    counter: dict = {"nodes": 0}
    try:
        for dev in iter_developments(prob, counter):
            closure = _closure(dev.maps, dev.ground_size, group_cap)
            identity = tuple(range(dev.ground_size))
            if any(
                perm != identity and any(perm[y] == y for y in range(dev.ground_size))
                for perm in closure
            ):
                continue
            verify_development(target, dev)
            rd = RigidDevelopment(
                ground_size=dev.ground_size,
                group_permutations=(identity,)
                + tuple(sorted(p for p in closure if p != identity)),
                assignment=dev.maps,
            )
            verify_rigid_development(H, rd)
            return Found(rd, counter["nodes"])
    except _BudgetExhausted:
        return BudgetExceeded(counter["nodes"], counter.get("size", H.ground_size))
    return ExhaustedUpTo(max_ground, counter["nodes"])

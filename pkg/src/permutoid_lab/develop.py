"""Bounded search for finite developments, and the finite-quotient probe.

A development of a permutoid embeds the ground set X as an identity prefix
of a finite set Y and assigns every element a full permutation of Y that
extends it, such that whenever r is the unique extension of p.q the assigned
permutations satisfy f_p o f_q = f_r.  The search deepens |Y| one point at a
time, so the first development found is one of minimal size in the canonical
order.  An exhausted size bound is never a proof that no development exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union

from .core import (
    Morphism,
    Permutoid,
    validate_permutoid,
    witness_triples,
)
from .errors import DevelopmentError, PreconditionRadius, UsageError
from .groups import (
    Backend,
    CameronPermutoid,
    FiniteQuotientEvidence,
    Presentation,
    cameron_permutoid,
    realize_backend,
    verify_quotient_hom,
)


@dataclass(frozen=True)
class DevelopmentProblem:
    source: Permutoid
    max_ground: int
    node_budget: int | None = None
    deterministic: bool = True

    def __post_init__(self):
        if self.max_ground < self.source.ground_size:
            raise UsageError(
                f"max_ground {self.max_ground} below ground size {self.source.ground_size}"
            )


@dataclass(frozen=True)
class Development:
    """Full permutations of {0,...,ground_size-1}, one per source element;
    the source ground set embeds as the identity prefix."""

    ground_size: int
    maps: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Found:
    development: object  # Development, or RigidDevelopment for rigid search
    nodes_explored: int


@dataclass(frozen=True)
class ExhaustedUpTo:
    max_ground: int
    nodes_explored: int


@dataclass(frozen=True)
class BudgetExceeded:
    nodes_explored: int
    size_reached: int


SearchVerdict = Union[Found, ExhaustedUpTo, BudgetExceeded]


class _BudgetExhausted(Exception):
    pass


class _Conflict(Exception):
    pass


class _Csp:
    """Backtracking state for one target size.

    Positions outside the source ground set are interchangeable, so a value
    may use a fresh point only if it is the smallest point not yet touched
    by the partial assignment; this breaks the relabeling symmetry without
    losing solutions.
    """

    def __init__(self, P: Permutoid, triples, m: int, counter: dict):
        self.m = m
        self.counter = counter
        k = len(P.elements)
        self.k = k
        self.fwd = [[-1] * m for _ in range(k)]
        self.inv = [[-1] * m for _ in range(k)]
        self.touched = [False] * m
        self.trail: list[tuple] = []
        self.queue: list[tuple[int, int, int]] = []
        self.assigned = 0
        self.by_left: list[list] = [[] for _ in range(k)]
        self.by_mid: list[list] = [[] for _ in range(k)]
        self.by_right: list[list] = [[] for _ in range(k)]
        for t in triples:
            p, q, r = t
            self.by_left[p].append(t)
            self.by_mid[q].append(t)
            self.by_right[r].append(t)

        for x in range(P.ground_size):
            self.touched[x] = True
        for y in range(m):
            self._set(P.identity_index, y, y)
        for e, el in enumerate(P.elements):
            for x, y in el.pairs:
                self._set(e, x, y)
        self._propagate()

    def _set(self, e: int, y: int, v: int):
        cur = self.fwd[e][y]
        if cur == v:
            return
        if cur != -1 or self.inv[e][v] != -1:
            raise _Conflict
        self.fwd[e][y] = v
        self.inv[e][v] = y
        self.trail.append(("a", e, y, v))
        if not self.touched[v]:
            self.touched[v] = True
            self.trail.append(("t", v))
        self.assigned += 1
        self.queue.append((e, y, v))

    def _propagate(self):
        fwd, inv = self.fwd, self.inv
        while self.queue:
            e, y, v = self.queue.pop()
            for p, q, r in self.by_mid[e]:
                w = fwd[p][v]
                if w != -1:
                    self._set(r, y, w)
                w = fwd[r][y]
                if w != -1:
                    self._set(p, v, w)
            for p, q, r in self.by_left[e]:
                yq = inv[q][y]
                if yq != -1:
                    self._set(r, yq, v)
                yr = inv[r][v]
                if yr != -1:
                    self._set(q, yr, y)
            for p, q, r in self.by_right[e]:
                z = fwd[q][y]
                if z != -1:
                    self._set(p, z, v)
                z = inv[p][v]
                if z != -1:
                    self._set(q, y, z)

    def _undo(self, checkpoint: int):
        while len(self.trail) > checkpoint:
            tag = self.trail.pop()
            if tag[0] == "a":
                _, e, y, v = tag
                self.fwd[e][y] = -1
                self.inv[e][v] = -1
                self.assigned -= 1
            else:
                self.touched[tag[1]] = False
        self.queue.clear()

    def _pick_variable(self):
        for e in range(self.k):
            row = self.fwd[e]
            for y in range(self.m):
                if row[y] == -1 and self.touched[y]:
                    return e, y
        return None

    def solutions(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        yield from self._solve()

    def _solve(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        if self.assigned == self.k * self.m:
            yield tuple(tuple(row) for row in self.fwd)
            return
        var = self._pick_variable()
        if var is None:
            # only untouched arguments remain; touching the smallest fresh
            # point is canonical since fresh points are interchangeable
            u = self.touched.index(False)
            self.touched[u] = True
            self.trail.append(("t", u))
            var = self._pick_variable()
            assert var is not None
        e, y = var
        candidates = [v for v in range(self.m) if self.touched[v] and self.inv[e][v] == -1]
        if False in self.touched:
            candidates.append(self.touched.index(False))
        for v in candidates:
            self.counter["nodes"] += 1
            budget = self.counter.get("budget")
            if budget is not None and self.counter["nodes"] > budget:
                raise _BudgetExhausted
            checkpoint = len(self.trail)
            try:
                self._set(e, y, v)
                self._propagate()
            except _Conflict:
                self._undo(checkpoint)
                continue
            yield from self._solve()
            self._undo(checkpoint)


def iter_developments(prob: DevelopmentProblem, counter: dict | None = None) -> Iterator[Development]:
    """All developments of the source, smallest target size first, in the
    canonical backtracking order.  Drives both searches."""
    P = prob.source
    validate_permutoid(P.ground_size, P.elements)
    triples = witness_triples(P)
    if counter is None:
        counter = {"nodes": 0}
    counter.setdefault("nodes", 0)
    if prob.node_budget is not None:
        counter["budget"] = prob.node_budget
    for m in range(P.ground_size, prob.max_ground + 1):
        counter["size"] = m
        try:
            csp = _Csp(P, triples, m, counter)
        except _Conflict:
            continue
        for maps in csp.solutions():
            yield Development(m, maps)


def search_development(prob: DevelopmentProblem) -> SearchVerdict:
    """First development in the canonical order, or a bound verdict.

    ExhaustedUpTo means no development with at most max_ground points
    exists; BudgetExceeded only means the node budget ran out.
    """
    counter: dict = {"nodes": 0}
    try:
        for dev in iter_developments(prob, counter):
            verify_development(prob.source, dev)
            return Found(dev, counter["nodes"])
    except _BudgetExhausted:
        return BudgetExceeded(counter["nodes"], counter.get("size", prob.source.ground_size))
    return ExhaustedUpTo(prob.max_ground, counter["nodes"])


def verify_development(P: Permutoid, D: Development) -> None:
    """Re-derive every constraint from the graphs and check D against them,
    independently of the search engine.  Raises DevelopmentError."""
    m = D.ground_size
    if m < P.ground_size:
        raise DevelopmentError("WrongShape", "target smaller than the source ground set")
    if len(D.maps) != len(P.elements):
        raise DevelopmentError("WrongShape", "one permutation per element required")
    for e, perm in enumerate(D.maps):
        if len(perm) != m or sorted(perm) != list(range(m)):
            raise DevelopmentError("NotAPermutation", f"map {e} is not a permutation", element=e)
    identity = tuple(range(m))
    if D.maps[P.identity_index] != identity:
        raise DevelopmentError("IdentityNotFull", "identity element must extend to the identity")
    for e, el in enumerate(P.elements):
        for x, y in el.pairs:
            if D.maps[e][x] != y:
                raise DevelopmentError(
                    "NotExtending",
                    f"map {e} does not extend its element at point {x}",
                    element=e,
                    point=x,
                )
    for (i, j), k in P.witness_table.items():
        if not isinstance(k, int):
            continue
        fp, fq, fr = D.maps[i], D.maps[j], D.maps[k]
        for y in range(m):
            if fp[fq[y]] != fr[y]:
                raise DevelopmentError(
                    "CompositionBroken",
                    f"triple ({i},{j},{k}) broken at point {y}",
                    p=i,
                    q=j,
                    r=k,
                    point=y,
                )


# -- the finite-quotient probe --------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProbeReport:
    verdict: str  # "found-quotient" | "definitively-none" | "inconclusive"
    evidence: FiniteQuotientEvidence | None = None
    quotient: Permutoid | None = None
    quotient_morphism: Morphism | None = None
    development: Development | None = None
    statistics: Mapping = field(default_factory=dict)


def _chase_evidence(
    cameron: CameronPermutoid,
    presentation: Presentation,
    chain: Sequence[Morphism],
    development: Development,
    closure_cap: int,
) -> FiniteQuotientEvidence:
    images = {}
    for g, name in enumerate(presentation.generators):
        e = cameron.element_for_generator(g)
        for morphism in chain:
            e = morphism.element_map[e]
        images[name] = development.maps[e]
    return verify_quotient_hom(presentation, images, closure_cap)


def quotient_evidence(
    presentation: Presentation,
    rho: int,
    quotient_morphisms: Union[Morphism, Sequence[Morphism]],
    development: Development,
    max_cosets: int = 10_000,
    closure_cap: int = 10**6,
) -> FiniteQuotientEvidence:
    """Turn a development of a quotient of the ball permutoid into certified
    finite-quotient evidence for the presented group.

    Chases each generator's element through the quotient chain into the
    development and verifies the resulting assignment kills every relator.
    """
    chain = (
        [quotient_morphisms]
        if isinstance(quotient_morphisms, Morphism)
        else list(quotient_morphisms)
    )
    cameron = cameron_permutoid(realize_backend(presentation, max_cosets), rho)
    if chain and chain[0].source != cameron.permutoid:
        raise UsageError("morphism chain does not start at the ball permutoid")
    return _chase_evidence(cameron, presentation, chain, development, closure_cap)


def probe_finite_quotient(
    presentation: Presentation,
    rho: int,
    max_ground: int,
    node_budget: int | None = None,
    max_cosets: int = 10_000,
    quotient_cap: int = 10,
    closure_cap: int = 10**6,
    deterministic: bool = True,
) -> ProbeReport:
    """Search for certified evidence that the presented group has a
    non-trivial finite quotient.

    Builds the radius-rho ball permutoid (rho must exceed half the longest
    relator), lists non-trivial quotient classes, and runs the development
    search on each, smallest ground sets first.  The node budget applies to
    each class's search independently.  A found development certifies the
    quotient through verify_quotient_hom; a trivial ball permutoid proves the
    group trivial; anything else is inconclusive, never a negative.
    """
    from .core import enumerate_quotients

    if 2 * rho <= presentation.max_relator_length:
        raise PreconditionRadius(
            f"need 2*rho > {presentation.max_relator_length}, got rho={rho}"
        )
    backend = realize_backend(presentation, max_cosets)
    cameron = cameron_permutoid(backend, rho)
    stats: dict = {
        "ground_size": cameron.permutoid.ground_size,
        "elements": len(cameron.permutoid.elements),
        "max_ground": max_ground,
        "node_budget": node_budget,
        "quotient_classes": 0,
        "searches_run": 0,
        "nodes_total": 0,
    }
    if cameron.permutoid.is_trivial:
        return ProbeReport(verdict="definitively-none", statistics=stats)

    quotients = enumerate_quotients(cameron.permutoid, nontrivial_only=True, cap=quotient_cap)
    quotients.sort(key=lambda qm: qm[0].ground_size)
    stats["quotient_classes"] = len(quotients)
    stats["skipped_too_large"] = 0

    for quotient, morphism in quotients:
        if quotient.ground_size > max_ground:
            stats["skipped_too_large"] += 1
            continue
        prob = DevelopmentProblem(quotient, max_ground, node_budget, deterministic)
        verdict = search_development(prob)
        stats["searches_run"] += 1
        stats["nodes_total"] += verdict.nodes_explored
        if isinstance(verdict, Found):
            evidence = _chase_evidence(
                cameron, presentation, [morphism], verdict.development, closure_cap
            )
            assert evidence.nontrivial
            return ProbeReport(
                verdict="found-quotient",
                evidence=evidence,
                quotient=quotient,
                quotient_morphism=morphism,
                development=verdict.development,
                statistics=stats,
            )
    return ProbeReport(verdict="inconclusive", statistics=stats)

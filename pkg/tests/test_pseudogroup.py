"""Pseudogroup generation, rigidity, and rigid developments."""

import itertools
import random

import pytest

from permutoid_lab.core import (
    PartialPermutation,
    canonical_form,
    identity_map,
    validate_morphism,
    validate_permutoid,
)
from permutoid_lab.develop import ExhaustedUpTo, Found
from permutoid_lab.errors import (
    GroundSetMismatch,
    NotAnAction,
    NotFree,
    NotRigid,
    PseudogroupError,
)
from permutoid_lab.groups import cameron_permutoid, parse_presentation, todd_coxeter
from permutoid_lab.pseudogroup import (
    Pseudogroup,
    check_pseudogroup,
    extend_to_maximal,
    generate_pseudogroup,
    group_action_pseudogroup,
    is_rigid_pseudogroup,
    maximal_permutoid,
    pseudogroup_membership,
    search_rigid_development,
    verify_rigid_development,
)

from conftest import saturating_radius


def pp(n, pairs):
    return PartialPermutation.from_pairs(n, pairs)


def all_members(H):
    """Materialized downward closure: every non-empty restriction."""
    seen = set()
    for m in H.maximal_elements:
        pairs = m.pairs
        for size in range(1, len(pairs) + 1):
            for sub in itertools.combinations(pairs, size):
                seen.add(sub)
    return [PartialPermutation(H.ground_size, s) for s in sorted(seen)]


class TestGeneratePseudogroup:
    def test_single_arrow(self):
        H = generate_pseudogroup(3, [pp(3, [(0, 1)])])
        assert [m.pairs for m in H.maximal_elements] == [
            ((0, 0), (1, 1), (2, 2)),
            ((0, 1),),
            ((1, 0),),
        ]
        check_pseudogroup(H)

    def test_cameron_generators_close_into_left_multiplications(self, pool_groups):
        group = pool_groups["z4"]
        cam = cameron_permutoid(group, saturating_radius(group))
        H = generate_pseudogroup(4, cam.permutoid.elements)
        assert len(H.maximal_elements) == 4
        assert all(m.is_full() for m in H.maximal_elements)

    def test_no_generators(self):
        H = generate_pseudogroup(3, [])
        assert [m.pairs for m in H.maximal_elements] == [((0, 0), (1, 1), (2, 2))]

    def test_ground_mismatch(self):
        with pytest.raises(GroundSetMismatch):
            generate_pseudogroup(3, [pp(2, [(0, 1)])])

    def test_regeneration_fixpoint(self):
        # generating from the maximal elements reproduces them exactly
        rng = random.Random(55)
        for _ in range(100):
            n = rng.randint(2, 5)
            gens = []
            for _ in range(rng.randint(1, 3)):
                size = rng.randint(1, n)
                xs = rng.sample(range(n), size)
                ys = rng.sample(range(n), size)
                gens.append(pp(n, list(zip(xs, ys))))
            H = generate_pseudogroup(n, gens)
            H2 = generate_pseudogroup(n, H.maximal_elements)
            assert {m.pairs for m in H.maximal_elements} == {
                m.pairs for m in H2.maximal_elements
            }


class TestMembership:
    def test_restrictions_of_generators(self):
        H = generate_pseudogroup(3, [pp(3, [(0, 1)])])
        assert pseudogroup_membership(H, pp(3, [(0, 1)]))
        assert pseudogroup_membership(H, identity_map(3))
        assert pseudogroup_membership(H, pp(3, [(1, 1)]))

    def test_mixed_left_multiplications_rejected(self, pool_groups):
        group = pool_groups["z4"]
        cam = cameron_permutoid(group, saturating_radius(group))
        H = generate_pseudogroup(4, cam.permutoid.elements)
        # a map sending the identity point along one multiplication and
        # another point along a different one is not a restriction
        m1, m2 = H.maximal_elements[1], H.maximal_elements[2]
        mixed = pp(4, [m1.pairs[0], m2.pairs[1]])
        assert not pseudogroup_membership(H, mixed)

    def test_downward_closure(self):
        H = generate_pseudogroup(4, [pp(4, [(0, 1), (1, 2), (2, 3)])])
        for member in all_members(H):
            assert pseudogroup_membership(H, member)


class TestRigidity:
    def test_single_arrow_rigid(self):
        H = generate_pseudogroup(3, [pp(3, [(0, 1)])])
        assert is_rigid_pseudogroup(H)

    def test_agreeing_generators_not_rigid(self):
        H = generate_pseudogroup(4, [pp(4, [(0, 1), (1, 0)]), pp(4, [(0, 1), (2, 3)])])
        maxima = {m.pairs for m in H.maximal_elements}
        assert ((0, 1), (1, 0)) in maxima and ((0, 1), (2, 3)) in maxima
        assert not is_rigid_pseudogroup(H)

    def test_cameron_pseudogroups_rigid_at_saturation(self, pool_groups):
        # at saturating radius the closure is the regular left action, and
        # group cancellation forbids two left multiplications agreeing
        for name in ("z2", "z3", "z4", "z5", "z6", "s3", "q8"):
            group = pool_groups[name]
            cam = cameron_permutoid(group, saturating_radius(group))
            H = generate_pseudogroup(
                cam.permutoid.ground_size, cam.permutoid.elements
            )
            assert is_rigid_pseudogroup(H)

    def test_unsaturated_closure_can_lose_rigidity(self, pool_groups):
        # without the gluing axiom, distinct fragments of the same left
        # multiplication stay separately maximal and agree on overlaps
        cam = cameron_permutoid(pool_groups["z4"], 1)
        H = generate_pseudogroup(cam.permutoid.ground_size, cam.permutoid.elements)
        assert not is_rigid_pseudogroup(H)

    @staticmethod
    def rigid_by_unique_maximal_extension(H):
        return all(
            sum(1 for m in H.maximal_elements if m.extends(f)) == 1
            for f in all_members(H)
        )

    @staticmethod
    def rigid_by_agreeing_unions(H):
        members = all_members(H)
        member_graphs = {m.pairs for m in members}
        for f, g in itertools.combinations(members, 2):
            fm, gm = f.mapping, g.mapping
            if not any(fm.get(x) == y for x, y in gm.items()):
                continue
            union = dict(fm)
            for x, y in gm.items():
                if union.get(x, y) != y:
                    return False  # union not functional
                union[x] = y
            if len(set(union.values())) != len(union):
                return False  # union not injective
            if tuple(sorted(union.items())) not in member_graphs:
                return False
        return True

    def test_three_way_equivalence_exhaustive(self):
        # pools: every single-generator pseudogroup on up to 4 points and
        # every two-generator pseudogroup on up to 3 points
        def injections(n):
            out = []
            for size in range(1, n + 1):
                for xs in itertools.combinations(range(n), size):
                    for ys in itertools.permutations(range(n), size):
                        out.append(pp(n, list(zip(xs, ys))))
            return out

        pools = []
        for n in (2, 3, 4):
            single = injections(n)
            pools.extend((n, [g]) for g in single)
        for n in (2, 3):
            single = injections(n)
            pools.extend((n, [g, h]) for g, h in itertools.combinations(single, 2))

        checked_rigid = checked_not = 0
        for n, gens in pools:
            H = generate_pseudogroup(n, gens)
            a = is_rigid_pseudogroup(H)
            b = self.rigid_by_unique_maximal_extension(H)
            c = self.rigid_by_agreeing_unions(H)
            assert a == b == c, (n, [g.pairs for g in gens])
            if a:
                checked_rigid += 1
            else:
                checked_not += 1
        assert checked_rigid > 100 and checked_not > 100

    def test_three_way_equivalence_sampled_on_four_points(self):
        rng = random.Random(77)
        for _ in range(60):
            gens = []
            for _ in range(rng.randint(2, 3)):
                size = rng.randint(1, 4)
                xs = rng.sample(range(4), size)
                ys = rng.sample(range(4), size)
                gens.append(pp(4, list(zip(xs, ys))))
            H = generate_pseudogroup(4, gens)
            a = is_rigid_pseudogroup(H)
            b = self.rigid_by_unique_maximal_extension(H)
            c = self.rigid_by_agreeing_unions(H)
            assert a == b == c


class TestMaximalPermutoid:
    def test_single_arrow(self):
        H = generate_pseudogroup(3, [pp(3, [(0, 1)])])
        P = maximal_permutoid(H)
        assert len(P.elements) == 3
        # the two arrows compose into restrictions of the identity
        from permutoid_lab.core import witness_triples

        triples = witness_triples(P)
        arrow = next(i for i, e in enumerate(P.elements) if e.pairs == ((0, 1),))
        back = next(i for i, e in enumerate(P.elements) if e.pairs == ((1, 0),))
        assert (arrow, back, P.identity_index) in triples

    def test_not_rigid_rejected(self):
        H = generate_pseudogroup(
            4, [pp(4, [(0, 1), (1, 0)]), pp(4, [(0, 1), (2, 3)])]
        )
        with pytest.raises(NotRigid):
            maximal_permutoid(H)

    def test_cameron_pseudogroup_matches_cameron_permutoid(self, pool_groups):
        group = pool_groups["z3"]
        rho = saturating_radius(group)
        cam = cameron_permutoid(group, rho)
        H = generate_pseudogroup(cam.permutoid.ground_size, cam.permutoid.elements)
        P = maximal_permutoid(H)
        assert canonical_form(P) == canonical_form(cam.permutoid)


class TestExtendToMaximal:
    def test_saturated_cameron_is_isomorphism(self, pool_groups):
        group = pool_groups["z4"]
        cam = cameron_permutoid(group, saturating_radius(group))
        morphism = extend_to_maximal(cam.permutoid)
        kind = validate_morphism(morphism)
        assert kind.is_isomorphism

    def test_two_restrictions_collapse_onto_swap(self):
        # with the pseudogroup generated by the full swap, both restrictions
        # extend into the same maximal element
        Pi = validate_permutoid(2, [[(0, 0), (1, 1)], [(0, 1)], [(1, 0)]])
        H = generate_pseudogroup(2, [pp(2, [(0, 1), (1, 0)])])
        morphism = extend_to_maximal(Pi, H)
        kind = validate_morphism(morphism)
        assert kind.is_extension
        assert morphism.element_map[1] == morphism.element_map[2]

    def test_trivial_permutoid(self):
        T = validate_permutoid(2, [[(0, 0), (1, 1)]])
        morphism = extend_to_maximal(T)
        assert validate_morphism(morphism).is_isomorphism


class TestGroupActionPseudogroup:
    def test_swap_action_of_z2(self, pool_groups):
        H = group_action_pseudogroup(pool_groups["z2"], [(0, 1), (1, 0)])
        assert [m.pairs for m in H.maximal_elements] == [
            ((0, 0), (1, 1)),
            ((0, 1), (1, 0)),
        ]
        assert is_rigid_pseudogroup(H)

    def test_trivial_action_not_free(self, pool_groups):
        with pytest.raises(NotFree):
            group_action_pseudogroup(pool_groups["z2"], [(0, 1), (0, 1)])

    def test_regular_action_of_s3(self, pool_groups):
        g = pool_groups["s3"]
        action = [tuple(g.table[i][j] for j in range(6)) for i in range(6)]
        # left translations acting on the right-multiplication table: use
        # row i as the permutation j -> i*j
        H = group_action_pseudogroup(g, action)
        assert len(H.maximal_elements) == 6
        assert is_rigid_pseudogroup(H)

    def test_non_action_rejected(self, pool_groups):
        with pytest.raises(NotAnAction):
            group_action_pseudogroup(pool_groups["z2"], [(0, 1), (1, 0), (0, 1)])


class TestSearchRigidDevelopment:
    def test_single_arrow_finds_three_cycle(self):
        H = generate_pseudogroup(3, [pp(3, [(0, 1)])])
        verdict = search_rigid_development(H, 5)
        assert isinstance(verdict, Found)
        rd = verdict.development
        assert rd.ground_size == 3
        assert rd.group_order == 3
        assert (1, 2, 0) in rd.group_permutations
        verify_rigid_development(H, rd)

    def test_z4_cameron_pseudogroup_regular(self, pool_groups):
        group = pool_groups["z4"]
        cam = cameron_permutoid(group, saturating_radius(group))
        H = generate_pseudogroup(4, cam.permutoid.elements)
        verdict = search_rigid_development(H, 6)
        assert isinstance(verdict, Found)
        assert verdict.development.ground_size == 4
        assert verdict.development.group_order == 4

    def test_not_rigid_rejected(self):
        H = generate_pseudogroup(
            4, [pp(4, [(0, 1), (1, 0)]), pp(4, [(0, 1), (2, 3)])]
        )
        with pytest.raises(NotRigid):
            search_rigid_development(H, 6)

    def test_action_pseudogroups_redevelop(self, pool_groups):
        for name in ("z2", "z3", "s3"):
            g = pool_groups[name]
            action = [tuple(g.table[i][j] for j in range(g.order)) for i in range(g.order)]
            H = group_action_pseudogroup(g, action)
            verdict = search_rigid_development(H, g.order)
            assert isinstance(verdict, Found)
            assert verdict.development.ground_size <= g.order

    def test_swap_needs_even_ground(self, pool_groups):
        # a free involution cannot exist on an odd number of points
        H = group_action_pseudogroup(pool_groups["z2"], [(0, 1), (1, 0)])
        verdict = search_rigid_development(H, 2)
        assert isinstance(verdict, Found) and verdict.development.ground_size == 2

    def test_group_cap_exceeded(self, pool_groups):
        from permutoid_lab.errors import GroupClosureCapExceeded

        group = pool_groups["z4"]
        cam = cameron_permutoid(group, saturating_radius(group))
        H = generate_pseudogroup(4, cam.permutoid.elements)
        with pytest.raises(GroupClosureCapExceeded):
            search_rigid_development(H, 6, group_cap=2)


class TestQuotientChain:
    def test_finite_quotient_yields_rigid_development_and_back(self, pool_presentations):
        # a presentation with a non-trivial finite quotient has a ball
        # permutoid quotient whose pseudogroup is rigid and develops; the
        # found development, read as a permutoid development, verifies
        from permutoid_lab.core import enumerate_quotients
        from permutoid_lab.develop import Development, verify_development
        from permutoid_lab.groups import realize_backend
        from permutoid_lab.pseudogroup import maximal_permutoid

        cam = cameron_permutoid(realize_backend(pool_presentations["z6"]), 4)
        hits = 0
        for quotient, _ in enumerate_quotients(cam.permutoid, nontrivial_only=True):
            H = generate_pseudogroup(quotient.ground_size, quotient.elements)
            if not is_rigid_pseudogroup(H):
                continue
            verdict = search_rigid_development(H, quotient.ground_size + 2)
            if not isinstance(verdict, Found):
                continue
            hits += 1
            rd = verdict.development
            target = maximal_permutoid(H)
            verify_development(target, Development(rd.ground_size, rd.assignment))
        assert hits >= 1


class TestCheckPseudogroup:
    def test_rejects_non_antichain(self):
        with pytest.raises(PseudogroupError) as ei:
            check_pseudogroup(
                Pseudogroup(2, (identity_map(2), pp(2, [(0, 0)])))
            )
        assert ei.value.code == "NotAntichain"

    def test_rejects_missing_identity(self):
        with pytest.raises(PseudogroupError) as ei:
            check_pseudogroup(Pseudogroup(2, (pp(2, [(0, 1), (1, 0)]),)))
        assert ei.value.code == "MissingIdentity"

    def test_rejects_missing_inverse(self):
        with pytest.raises(PseudogroupError) as ei:
            check_pseudogroup(
                Pseudogroup(3, (identity_map(3), pp(3, [(0, 1)])))
            )
        assert ei.value.code == "NotInverseClosed"

    def test_rejects_escaping_composition(self):
        # 0->1 and 1->2 need their composite 0->2 (or an extension of it)
        members = (
            identity_map(3),
            pp(3, [(0, 1)]),
            pp(3, [(1, 0)]),
            pp(3, [(1, 2)]),
            pp(3, [(2, 1)]),
        )
        with pytest.raises(PseudogroupError) as ei:
            check_pseudogroup(Pseudogroup(3, members))
        assert ei.value.code == "NotClosed"

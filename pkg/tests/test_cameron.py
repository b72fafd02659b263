"""Ball permutoids, radius extensions, triangulation, universal groups."""

import pytest

from permutoid_lab.core import (
    is_rigid_permutoid,
    validate_morphism,
    validate_permutoid,
)
from permutoid_lab.errors import (
    OutOfBounds,
    PreconditionRadius,
    RelatorNotKilled,
    UsageError,
)
from permutoid_lab.groups import (
    FreeGroup,
    Word,
    cameron_permutoid,
    cayley_ball,
    format_presentation,
    parse_presentation,
    radius_extension,
    todd_coxeter,
    triangulate,
    universal_group,
    verify_quotient_hom,
)

from conftest import POOL_ORDERS, saturating_radius


class TestCameronPermutoid:
    def test_z3_saturated(self, pool_groups):
        cam = cameron_permutoid(pool_groups["z3"], 2)
        assert cam.permutoid.ground_size == 3
        assert len(cam.permutoid.elements) == 3
        assert all(e.is_full() for e in cam.permutoid.elements)

    def test_free_group_radius_one(self):
        cam = cameron_permutoid(FreeGroup(1), 1)
        P = cam.permutoid
        assert P.ground_size == 5
        assert len(P.elements) == 3
        assert P.identity_index == 0
        # the identity acts on the whole carrier ball, the others on the
        # inner ball only
        assert len(P.elements[0].pairs) == 5
        assert len(P.elements[1].pairs) == 3
        assert len(P.elements[2].pairs) == 3
        assert set(cam.labels) == {"1", "a0", "a0^-1"}

    def test_trivial_group_gives_trivial_permutoid(self):
        g = todd_coxeter(parse_presentation("gens: a\nrels: a"), 10)
        for rho in (1, 2, 3):
            cam = cameron_permutoid(g, rho)
            assert cam.permutoid.ground_size == 1
            assert cam.permutoid.is_trivial

    def test_pool_validity_and_rigidity(self, pool_groups):
        # every ball permutoid in the pool validates and is rigid
        for group in pool_groups.values():
            for rho in (1, 2, 3):
                cam = cameron_permutoid(group, rho)
                validate_permutoid(
                    cam.permutoid.ground_size, cam.permutoid.elements
                )
                assert is_rigid_permutoid(cam.permutoid)

    def test_saturated_balls_give_full_permutations(self, pool_groups):
        for name, group in pool_groups.items():
            rho = saturating_radius(group)
            cam = cameron_permutoid(group, rho)
            assert cam.permutoid.ground_size == POOL_ORDERS[name]
            assert all(e.is_full() for e in cam.permutoid.elements)

    def test_element_for_generator_handles_dead_generator(self):
        g = todd_coxeter(parse_presentation("gens: a\nrels: a"), 10)
        cam = cameron_permutoid(g, 1)
        assert cam.element_for_generator(0) == cam.permutoid.identity_index

    def test_bad_radius(self, pool_groups):
        with pytest.raises(UsageError):
            cameron_permutoid(pool_groups["z2"], 0)


class TestRadiusExtension:
    def test_free_group_one_to_two(self):
        m = radius_extension(FreeGroup(1), 1, 2)
        kind = validate_morphism(m)
        assert kind.is_extension
        assert len(set(m.point_map)) == 5

    def test_saturated_is_isomorphism(self, pool_groups):
        m = radius_extension(pool_groups["z2"], 1, 2)
        assert validate_morphism(m).is_isomorphism

    def test_equal_radii_rejected(self, pool_groups):
        with pytest.raises(PreconditionRadius):
            radius_extension(pool_groups["z2"], 2, 2)


class TestTriangulate:
    def test_z3_contains_aaa_and_presents_z3(self, pool_presentations):
        t = triangulate(pool_presentations["z3"], 2)
        # symbol for the group element a is the ball position of a
        g = todd_coxeter(pool_presentations["z3"], 100)
        a_pos = cayley_ball(g, 2).position(g.generator_images[0])
        aaa = ((a_pos, 1),) * 3
        assert any(r.letters == aaa for r in t.relators)
        assert len(t.generators) == 3
        assert todd_coxeter(t, 1000).order == 3

    def test_s3_presents_s3(self, pool_presentations):
        t = triangulate(pool_presentations["s3"], 3)
        assert len(t.generators) == 6
        assert todd_coxeter(t, 1000).order == 6

    def test_trivial_group(self):
        t = triangulate(parse_presentation("gens: a\nrels: a"), 1)
        assert len(t.generators) == 1
        assert todd_coxeter(t, 100).order == 1

    def test_radius_precondition(self, pool_presentations):
        # longest relator of s3 has length 4, so m must exceed 2
        with pytest.raises(PreconditionRadius):
            triangulate(pool_presentations["s3"], 2)

    def test_relators_have_length_at_most_three(self, pool_presentations):
        t = triangulate(pool_presentations["z4"], 3)
        assert all(1 <= r.length <= 3 for r in t.relators)


class TestUniversalGroup:
    def test_z3_saturated_realizes_order_three(self, pool_groups):
        cam = cameron_permutoid(pool_groups["z3"], 2)
        pres = universal_group(cam.permutoid)
        assert len(pres.generators) == 3
        assert todd_coxeter(pres, 10_000).order == 3

    def test_trivial_permutoid(self):
        T = validate_permutoid(1, [[(0, 0)]])
        pres = universal_group(T)
        assert format_presentation(pres) == "gens: p0\nrels: p0\n"
        assert todd_coxeter(pres, 100).order == 1

    def test_remark_permutoid_is_infinite_cyclic(self):
        R = validate_permutoid(2, [[(0, 0), (1, 1)], [(0, 1)], [(1, 0)]])
        pres = universal_group(R)
        # relations pair the two restrictions into mutual inverses
        rendered = format_presentation(pres)
        assert "p1 p2 p0^-1" in rendered and "p2 p1 p0^-1" in rendered
        with pytest.raises(OutOfBounds):
            todd_coxeter(pres, 100)
        # the mod-2 image kills every relation and is non-trivial
        ev = verify_quotient_hom(
            pres, {"p0": [0, 1], "p1": [1, 0], "p2": [1, 0]}
        )
        assert ev.group_order == 2 and ev.nontrivial

    def test_epimorphism_direction_on_pool(self, pool_groups):
        # sending each universal generator to its ball element kills every
        # universal relation inside the realized group, at any radius; the
        # images generate, so the universal group surjects onto the group
        for name in ("z4", "s3", "q8"):
            group = pool_groups[name]
            for rho in (1, 2):
                cam = cameron_permutoid(group, rho)
                uni = universal_group(cam.permutoid)
                handles = [
                    cam.ball.handles[i] for i in range(len(cam.permutoid.elements))
                ]
                for rel in uni.relators:
                    img = 0
                    for g, s in rel.letters:
                        h = handles[g] if s > 0 else group.handle_inv(handles[g])
                        img = group.table[img][h]
                    assert img == 0
                ball_gens = set(handles)
                reached = {0}
                frontier = [0]
                while frontier:
                    x = frontier.pop()
                    for h in ball_gens:
                        for y in (group.table[x][h], group.table[x][group.handle_inv(h)]):
                            if y not in reached:
                                reached.add(y)
                                frontier.append(y)
                assert len(reached) == group.order


class TestVerifyQuotientHom:
    def test_five_cycle(self, pool_presentations):
        ev = verify_quotient_hom(pool_presentations["z5"], {"a": [1, 2, 3, 4, 0]})
        assert ev.group_order == 5 and ev.nontrivial

    def test_identity_image_trivial(self, pool_presentations):
        ev = verify_quotient_hom(pool_presentations["z5"], {"a": [0, 1, 2, 3, 4]})
        assert ev.group_order == 1 and not ev.nontrivial

    def test_transposition_fails(self, pool_presentations):
        with pytest.raises(RelatorNotKilled):
            verify_quotient_hom(pool_presentations["z5"], {"a": [1, 0, 2, 3, 4]})

    def test_missing_image(self, pool_presentations):
        with pytest.raises(UsageError):
            verify_quotient_hom(pool_presentations["s3"], {"a": [0, 1]})

    def test_not_a_permutation(self, pool_presentations):
        with pytest.raises(UsageError):
            verify_quotient_hom(pool_presentations["z5"], {"a": [0, 0, 1, 2, 3]})

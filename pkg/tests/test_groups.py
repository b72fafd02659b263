"""Words, presentations, coset enumeration, Cayley balls."""

import pytest

from permutoid_lab.errors import OutOfBounds, ParseError, UsageError
from permutoid_lab.groups import (
    FreeGroup,
    Presentation,
    RealizedGroup,
    Word,
    cayley_ball,
    format_presentation,
    free_reduce,
    parse_presentation,
    render_word,
    todd_coxeter,
)

from conftest import saturating_radius


class TestFreeReduce:
    def test_cancels_adjacent_inverse_pair(self):
        w = Word(((0, 1), (0, -1), (1, 1)))
        assert free_reduce(w).letters == ((1, 1),)

    def test_empty_stays_empty(self):
        assert free_reduce(Word(())).letters == ()

    def test_nested_cancellation(self):
        w = Word(((0, 1), (1, 1), (1, -1), (0, -1)))
        assert free_reduce(w).letters == ()

    def test_idempotent(self):
        w = Word(((0, 1), (0, 1), (1, -1)))
        assert free_reduce(free_reduce(w)) == free_reduce(w)


class TestParsePresentation:
    def test_single_generator_power(self):
        p = parse_presentation("gens: a\nrels: a^5")
        assert p.generators == ("a",)
        assert len(p.relators) == 1
        assert p.relators[0].length == 5

    def test_three_relators(self):
        p = parse_presentation("gens: a,b\nrels: a^2, b^3, a b a b")
        assert [r.length for r in p.relators] == [2, 3, 4]

    def test_reducible_relator_dropped_with_warning(self):
        with pytest.warns(UserWarning):
            p = parse_presentation("gens: a\nrels: a a^-1")
        assert p.relators == ()

    def test_unknown_generator(self):
        with pytest.raises(ParseError) as ei:
            parse_presentation("gens: a\nrels: b^2")
        assert ei.value.code == "UnknownGenerator"

    def test_bad_exponent(self):
        with pytest.raises(ParseError) as ei:
            parse_presentation("gens: a\nrels: a^x")
        assert ei.value.code == "BadExponent"

    def test_empty_generator_list(self):
        with pytest.raises(ParseError) as ei:
            parse_presentation("rels: a^2")
        assert ei.value.code == "EmptyGeneratorList"

    def test_negative_exponent(self):
        p = parse_presentation("gens: a, b\nrels: a b^-2")
        assert p.relators[0].letters == ((0, 1), (1, -1), (1, -1))

    def test_comments_and_blank_lines(self):
        p = parse_presentation("# cyclic\n\ngens: a\nrels: a^3\n")
        assert p.generators == ("a",)

    def test_round_trip(self):
        text = "gens: a, b\nrels: a^2, b^3, a b a b\n"
        assert format_presentation(parse_presentation(text)) == text

    def test_render_word_collapses_runs(self):
        assert render_word(Word(((0, 1), (0, 1), (1, -1))), ("a", "b")) == "a^2 b^-1"
        assert render_word(Word(()), ("a",)) == "1"


class TestToddCoxeter:
    def test_z5_table_is_modular_addition(self, pool_groups):
        g = pool_groups["z5"]
        assert g.order == 5
        # oracle: index each element by its power of the generator, then the
        # table must agree with addition mod 5 under that indexing
        a = g.generator_images[0]
        power = {0: 0}
        x, k = a, 1
        while x != 0:
            power[x] = k
            x, k = g.table[x][a], k + 1
        assert len(power) == 5
        for i in range(5):
            for j in range(5):
                assert power[g.table[i][j]] == (power[i] + power[j]) % 5

    def test_s3_order_census(self, pool_groups):
        g = pool_groups["s3"]
        assert g.order == 6

        def elt_order(i):
            o, x = 1, i
            while x != 0:
                x, o = g.table[x][i], o + 1
            return o

        census = sorted(elt_order(i) for i in range(6))
        assert census == [1, 2, 2, 2, 3, 3]

    def test_free_group_out_of_bounds(self):
        with pytest.raises(OutOfBounds):
            todd_coxeter(parse_presentation("gens: a"), 100)

    def test_trivial_group(self):
        g = todd_coxeter(parse_presentation("gens: a\nrels: a"), 100)
        assert g.order == 1

    def test_deterministic_tables(self):
        p = parse_presentation("gens: a, b\nrels: a^2, b^3, a b a b")
        assert todd_coxeter(p, 100) == todd_coxeter(p, 100)

    def test_identity_row_and_column(self, pool_groups):
        g = pool_groups["q8"]
        assert all(g.table[0][j] == j for j in range(g.order))
        assert all(g.table[i][0] == i for i in range(g.order))

    def test_bad_cap(self):
        with pytest.raises(UsageError):
            todd_coxeter(parse_presentation("gens: a\nrels: a^2"), 0)

    def test_lookahead_recovers_space_on_collapsing_presentation(self):
        # a classic trivial-group presentation whose enumeration overshoots
        # before collapsing: a tight cap forces the lookahead phase
        p = parse_presentation("gens: a, b\nrels: b^-1 a b a^-2, a^-1 b a b^-2")
        with pytest.raises(OutOfBounds):
            todd_coxeter(p, 8)
        assert todd_coxeter(p, 10).order == 1

    def test_tight_cap_gives_identical_table(self, pool_presentations):
        p = pool_presentations["s3"]
        assert todd_coxeter(p, 7) == todd_coxeter(p, 1000)


class TestRealizedGroupChecks:
    def test_rejects_broken_associativity(self):
        # Latin square with identity that is not a group table
        table = (
            (0, 1, 2, 3, 4),
            (1, 0, 3, 4, 2),
            (2, 4, 0, 1, 3),
            (3, 2, 4, 0, 1),
            (4, 3, 1, 2, 0),
        )
        with pytest.raises(UsageError):
            RealizedGroup(5, table, (1,), backend_tag="explicit-table")

    def test_rejects_non_generating_images(self):
        table = tuple(
            tuple((i + j) % 4 for j in range(4)) for i in range(4)
        )
        with pytest.raises(UsageError):
            RealizedGroup(4, table, (2,), backend_tag="explicit-table")

    def test_accepts_z4_with_generator(self):
        table = tuple(
            tuple((i + j) % 4 for j in range(4)) for i in range(4)
        )
        g = RealizedGroup(4, table, (1,), backend_tag="explicit-table")
        assert g.inverses == (0, 3, 2, 1)


class TestCayleyBall:
    def test_infinite_cyclic_ball_sizes(self):
        fg = FreeGroup(1)
        assert cayley_ball(fg, 1).size == 3
        assert cayley_ball(fg, 2).size == 5

    def test_z3_saturates(self, pool_groups):
        assert cayley_ball(pool_groups["z3"], 2).size == 3

    def test_trivial_group_ball(self):
        g = todd_coxeter(parse_presentation("gens: a\nrels: a"), 10)
        for r in (1, 2, 3):
            assert cayley_ball(g, r).size == 1

    def test_nesting(self, pool_groups):
        g = pool_groups["s3"]
        b2, b3 = cayley_ball(g, 2), cayley_ball(g, 3)
        assert set(b2.handles) <= set(b3.handles)
        # breadth-first prefix ordering agrees between radii
        assert b3.handles[: b2.size] == b2.handles

    def test_inverse_closure(self, pool_groups):
        for name in ("z6", "s3", "q8"):
            ball = cayley_ball(pool_groups[name], 2)
            for i in range(ball.size):
                j = ball.inverse_position(i)
                assert ball.distances[j] <= ball.distances[i]

    def test_geodesic_lengths_match_bfs_depth(self, pool_groups):
        for group in (pool_groups["q8"], FreeGroup(2)):
            ball = cayley_ball(group, 2)
            for i in range(ball.size):
                assert ball.words[i].length == ball.distances[i]

    def test_prefix_size(self, pool_groups):
        ball = cayley_ball(pool_groups["z6"], 4)
        assert ball.prefix_size(1) == 3
        assert ball.prefix_size(2) == 5
        assert ball.prefix_size(3) == 6

    def test_saturating_radius_helper(self, pool_groups):
        from conftest import POOL_ORDERS

        for name, group in pool_groups.items():
            r = saturating_radius(group)
            assert cayley_ball(group, r).size == POOL_ORDERS[name]

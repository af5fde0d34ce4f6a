import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipmatch.flipgraph import enumerate_matchings, shortest_flip_sequence
from flipmatch.flipseq import (
    FlipSequence,
    SequenceError,
    build_dual_tree,
    convex_route_to_hull,
    flips_from_path,
    format_sequence,
    parse_sequence,
    replay,
    reverse,
    route,
    route_unmatched,
    routing_path,
    to_canonical,
    validate_sequence,
)
from flipmatch.generators import convex_points
from flipmatch.geometry import FormatError, PointSet
from flipmatch.matching import Flip, Matching, canonical_matching, convex_hull_matching, legal_flips

from helpers import random_matching, random_point_set

TRI = PointSet([(0, 0), (4, 0), (1, 3)])
PENTAGON = PointSet([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)])


@st.composite
def matchings(draw, sizes=(3, 5, 7, 9, 11)):
    rng = random.Random(draw(st.integers(0, 2**32)))
    ps = random_point_set(draw(st.sampled_from(sizes)), rng)
    return random_matching(ps, rng, steps=draw(st.integers(0, 25)))


@st.composite
def sequences(draw):
    start = draw(matchings(sizes=(3, 5, 7, 9)))
    rng = random.Random(draw(st.integers(0, 2**32)))
    m, flips = start, []
    for _ in range(draw(st.integers(0, 12))):
        f = rng.choice(legal_flips(m))
        m = replay(m, [f])
        flips.append(f)
    return FlipSequence(start, tuple(flips))


class TestRouteUnmatched:
    def test_triangle(self):
        m = Matching(TRI, [(0, 1)], 2)
        s = route_unmatched(m, 0)
        assert s.flips == (Flip(2, 1, 0),)
        assert s.end == Matching(TRI, [(1, 2)], 0)

    def test_target_already_unmatched(self):
        m = Matching(TRI, [(0, 1)], 2)
        assert len(route_unmatched(m, 2)) == 0
        assert routing_path(m, 2) == [2]

    @settings(max_examples=80, deadline=None)
    @given(matchings(), st.data())
    def test_at_most_m_flips(self, m, data):
        t = data.draw(st.integers(0, len(m.host) - 1))
        s = route_unmatched(m, t)
        assert validate_sequence(s) is None
        assert s.end.unmatched == t and len(s) <= m.m

    @settings(max_examples=30, deadline=None)
    @given(matchings(sizes=(5, 7, 9)), st.data())
    def test_never_shorter_than_bfs(self, m, data):
        from flipmatch.flipgraph import nearest_matching

        t = data.draw(st.integers(0, len(m.host) - 1))
        best = nearest_matching(m, lambda x: x.unmatched == t)
        assert len(best) <= len(route_unmatched(m, t))

    def test_flips_from_path(self):
        assert flips_from_path([0, 1, 2]) == [Flip(2, 1, 0)]
        assert flips_from_path([1, 2, 3, 6, 5]) == [Flip(5, 6, 3), Flip(3, 2, 1)]
        with pytest.raises(SequenceError):
            flips_from_path([0, 1])


class TestCanonical:
    def test_already_canonical(self):
        assert len(to_canonical(canonical_matching(PENTAGON))) == 0

    def test_triangle_all(self):
        for m in enumerate_matchings(TRI):
            s = to_canonical(m)
            assert len(s) <= 2 and s.end == canonical_matching(TRI)

    @settings(max_examples=60, deadline=None)
    @given(matchings())
    def test_quadratic_bound(self, m):
        s = to_canonical(m)
        assert validate_sequence(s) is None
        assert s.end == canonical_matching(m.host)
        assert len(s) <= m.m * (m.m + 3) // 2


class TestRoute:
    def test_same_matching(self):
        m = random_matching(PENTAGON, random.Random(1))
        assert len(route(m, m)) == 0

    def test_untrimmed_is_doubled(self):
        m = Matching(TRI, [(0, 1)], 2)
        assert len(route(m, m, trim=False)) == 2 * len(to_canonical(m))

    def test_triangle(self):
        a, b = Matching(TRI, [(0, 1)], 2), Matching(TRI, [(1, 2)], 0)
        s = route(a, b)
        assert validate_sequence(s) is None and s.end == b

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32), st.sampled_from([5, 7, 9, 11]))
    def test_random_pairs(self, seed, n):
        rng = random.Random(seed)
        ps = random_point_set(n, rng)
        a, b = random_matching(ps, rng), random_matching(ps, rng)
        s = route(a, b)
        assert validate_sequence(s) is None and s.end == b
        assert len(s) <= a.m * (a.m + 3)

    def test_disjoint_needs_m_flips(self):
        ps = convex_points(7, seed=2)
        ms = enumerate_matchings(ps)
        for a in ms[:10]:
            for b in ms:
                if not a.edges & b.edges:
                    assert len(route(a, b)) >= a.m

    def test_different_hosts(self):
        with pytest.raises(SequenceError):
            route(canonical_matching(TRI), canonical_matching(PENTAGON))


class TestReverseAndValidate:
    def test_empty(self):
        m = Matching(TRI, [(0, 1)], 2)
        assert reverse(FlipSequence(m)) == FlipSequence(m)
        assert validate_sequence(FlipSequence(m)) is None

    def test_single(self):
        s = FlipSequence(Matching(TRI, [(0, 1)], 2), (Flip(2, 0, 1),))
        assert reverse(s).flips == (Flip(1, 0, 2),)
        assert reverse(s).start == Matching(TRI, [(0, 2)], 1)

    @settings(max_examples=60, deadline=None)
    @given(sequences())
    def test_involution(self, s):
        assert reverse(reverse(s)) == s
        assert validate_sequence(reverse(s)) is None

    def test_crossing_flip_index(self):
        # 0-1 runs through the vertical edge 2-3
        ps = PointSet([(0, 0), (10, 0), (5, -5), (5, 5), (20, 1)])
        m = Matching(ps, [(2, 3), (1, 4)], 0)
        s = FlipSequence(m, (Flip(0, 2, 3), Flip(3, 2, 0), Flip(0, 1, 4)))
        assert validate_sequence(s) == 2

    def test_mismatched_concatenation(self):
        m = Matching(TRI, [(0, 1)], 2)
        s1 = route_unmatched(m, 0)
        s2 = route_unmatched(m, 1)
        joined = FlipSequence(m, s1.flips + s2.flips)
        assert validate_sequence(joined) == len(s1)
        with pytest.raises(SequenceError):
            s1.then(s2)


class TestConvex:
    def test_already_there(self):
        t = convex_hull_matching(PENTAGON, 0)
        assert len(convex_route_to_hull(t, t)) == 0

    def test_pentagon_chords(self):
        m = Matching(PENTAGON, [(0, 2), (3, 4)], 1)
        t = convex_hull_matching(PENTAGON, 1)
        s = convex_route_to_hull(m, t)
        assert validate_sequence(s) is None and s.end == t and len(s) <= 10
        assert len(shortest_flip_sequence(m, t)) <= len(s)

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_all_matchings_within_2n(self, n):
        ps = convex_points(n, seed=n)
        targets = [convex_hull_matching(ps, x) for x in range(n)]
        for m in enumerate_matchings(ps):
            for t in targets:
                s = convex_route_to_hull(m, t)
                assert s.end == t and len(s) <= 2 * n

    def test_rejects_non_hull_target(self):
        m = Matching(PENTAGON, [(0, 2), (3, 4)], 1)
        with pytest.raises(SequenceError):
            convex_route_to_hull(canonical_matching(PENTAGON), m)

    def test_rejects_non_convex(self):
        ps = PointSet([(0, 0), (10, 0), (5, 10), (5, 3), (20, 20)])
        with pytest.raises(SequenceError):
            convex_route_to_hull(canonical_matching(ps), canonical_matching(ps))

    def test_dual_tree(self):
        ps = convex_points(9, seed=4)
        for m in enumerate_matchings(ps):
            tree = build_dual_tree(m)
            assert len(tree.faces) == m.m + 1 and tree.is_tree()
            assert m.unmatched in tree.faces[tree.root]


class TestFormat:
    @settings(max_examples=40, deadline=None)
    @given(sequences())
    def test_round_trip(self, s):
        assert parse_sequence(format_sequence(s), s.start.host) == s

    def test_requires_start(self):
        with pytest.raises(FormatError):
            parse_sequence("unmatched 2\n0 1\n", TRI)

    def test_bad_flip_line(self):
        with pytest.raises(FormatError) as info:
            parse_sequence("start\nunmatched 2\n0 1\nflip 2 0\n", TRI)
        assert info.value.line == 4

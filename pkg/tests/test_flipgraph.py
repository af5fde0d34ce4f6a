import random
from itertools import combinations
from math import comb

import pytest

from flipmatch.flipgraph import (
    CapExceededError,
    DisconnectedGraphError,
    analysis_report,
    bfs_distances,
    build_flip_graph,
    connected_components,
    diameter,
    enumerate_matchings,
    nearest_matching,
    search_disconnected_rotation,
    shortest_flip_sequence,
)
from flipmatch.flipseq import to_canonical, validate_sequence
from flipmatch.generators import convex_family, convex_points, windmill_points
from flipmatch.geometry import PointSet, coords_cross
from flipmatch.matching import FlipRule, Matching, canonical_matching

from helpers import random_point_set

TRI = PointSet([(0, 0), (4, 0), (1, 3)])
ROT = FlipRule.EMPTY_TRIANGLE_ROTATION
REPORT_KEYS = {"n", "rule", "vertex_count", "edge_count", "components", "diameter", "witness_pair", "runtime_ms"}


def brute_force_count(ps):
    """Plane almost-perfect matchings by testing every m-subset of segments."""
    n = len(ps)
    pts = ps.points
    segs = list(combinations(range(n), 2))
    count = 0
    for chosen in combinations(segs, n // 2):
        ends = [v for s in chosen for v in s]
        if len(set(ends)) != len(ends):
            continue
        if any(
            not set(s) & set(t) and coords_cross(pts[s[0]], pts[s[1]], pts[t[0]], pts[t[1]])
            for s, t in combinations(chosen, 2)
        ):
            continue
        count += 1
    return count


def catalan(m):
    return comb(2 * m, m) // (m + 1)


def all_pairs_oracle(g):
    # Floyd-Warshall, independent of the BFS code
    k = len(g.vertices)
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(k)] for i in range(k)]
    for i, a in enumerate(g.adjacency):
        for j in a:
            d[i][j] = 1
    for w in range(k):
        dw = d[w]
        for i in range(k):
            di = d[i]
            if di[w] == inf:
                continue
            for j in range(k):
                if di[w] + dw[j] < di[j]:
                    di[j] = di[w] + dw[j]
    return d


class TestEnumeration:
    def test_triangle(self):
        assert len(enumerate_matchings(TRI)) == 3

    def test_single_point(self):
        assert len(enumerate_matchings(PointSet([(0, 0)]))) == 1

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_convex_counts(self, n):
        m = n // 2
        assert len(enumerate_matchings(convex_points(n, seed=1))) == n * catalan(m)

    def test_against_subset_oracle(self):
        rng = random.Random(11)
        for _ in range(15):
            ps = random_point_set(rng.choice([3, 5, 7]), rng)
            assert len(enumerate_matchings(ps)) == brute_force_count(ps)

    def test_sorted_and_distinct(self):
        ms = enumerate_matchings(random_point_set(7, random.Random(2)))
        keys = [m.key for m in ms]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            enumerate_matchings(convex_points(13, seed=0))
        assert len(enumerate_matchings(convex_points(13, seed=0), cap_n=13)) == 13 * catalan(6)


class TestGraph:
    def test_triangle_is_complete(self):
        g = build_flip_graph(TRI)
        assert g.edge_count == 3 and all(len(a) == 2 for a in g.adjacency)
        assert connected_components(g) == [3]
        assert diameter(g)[0] == 1

    def test_single_point(self):
        g = build_flip_graph(PointSet([(0, 0)]))
        assert connected_components(g) == [1] and diameter(g)[0] == 0

    def test_convex_pentagon(self):
        g = build_flip_graph(convex_points(5, seed=1))
        assert connected_components(g) == [10]
        d, _ = diameter(g)
        assert 2 <= d <= 10

    def test_adjacency_is_one_flip(self):
        g = build_flip_graph(random_point_set(7, random.Random(4)))
        for i, a in enumerate(g.adjacency):
            for j in a:
                assert len(g.vertices[i].edges & g.vertices[j].edges) == g.vertices[i].m - 1

    def test_rotation_subgraph(self):
        ps = random_point_set(7, random.Random(6))
        g, r = build_flip_graph(ps), build_flip_graph(ps, ROT)
        assert all(set(b) <= set(a) for a, b in zip(g.adjacency, r.adjacency))

    @pytest.mark.parametrize("seed", range(4))
    def test_diameter_matches_oracle(self, seed):
        g = build_flip_graph(random_point_set(7, random.Random(seed)))
        d = all_pairs_oracle(g)
        got, (s, t) = diameter(g)
        assert got == max(max(row) for row in d)
        assert d[s][t] == got
        assert bfs_distances(g, s) == d[s]

    def test_diameter_within_quadratic_bound(self):
        rng = random.Random(9)
        for n in (5, 7, 9):
            ps = random_point_set(n, rng)
            m = n // 2
            assert diameter(build_flip_graph(ps))[0] <= m * (m + 3)

    def test_threads_do_not_change_result(self):
        g = build_flip_graph(random_point_set(9, random.Random(1)))
        assert diameter(g, threads=1) == diameter(g, threads=3)

    def test_disconnected_diameter(self):
        ps, _ = windmill_points(3, 100)
        g = build_flip_graph(ps, ROT)
        with pytest.raises(DisconnectedGraphError) as info:
            diameter(g)
        assert sum(info.value.components) == len(g.vertices)


class TestDistanceInvariants:
    @pytest.mark.parametrize("seed", range(3))
    def test_canonicalization_is_an_upper_bound(self, seed):
        ps = random_point_set(7, random.Random(100 + seed))
        g = build_flip_graph(ps)
        dist = bfs_distances(g, g.index(canonical_matching(ps)))
        for i, m in enumerate(g.vertices):
            assert dist[i] <= len(to_canonical(m))

    @pytest.mark.parametrize("seed", range(3))
    def test_disjoint_pairs_need_m_flips(self, seed):
        ps = random_point_set(7, random.Random(200 + seed))
        g = build_flip_graph(ps)
        for i, a in enumerate(g.vertices):
            dist = bfs_distances(g, i)
            for j, b in enumerate(g.vertices):
                if not a.edges & b.edges:
                    assert dist[j] >= a.m

    @pytest.mark.parametrize("rule", list(FlipRule))
    def test_adjacency_symmetric(self, rule):
        g = build_flip_graph(random_point_set(9, random.Random(3)), rule)
        for i, a in enumerate(g.adjacency):
            assert all(i in g.adjacency[j] for j in a)


class TestImplicitSearch:
    def test_shortest_matches_bfs(self):
        ps = random_point_set(7, random.Random(3))
        g = build_flip_graph(ps)
        dist = bfs_distances(g, 0)
        for j in range(0, len(g.vertices), 7):
            s = shortest_flip_sequence(g.vertices[0], g.vertices[j])
            assert len(s) == dist[j] and validate_sequence(s) is None and s.end == g.vertices[j]

    def test_nearest_unreachable(self):
        ps, _ = windmill_points(3, 100)
        isolated = Matching(ps, [(1, 4), (2, 5), (3, 6)], 0)
        assert nearest_matching(isolated, lambda m: m.unmatched != 0, ROT) is None
        assert nearest_matching(isolated, lambda m: m.unmatched != 0) is not None

    def test_limit(self):
        ps = convex_points(11, seed=0)
        start = enumerate_matchings(ps)[0]
        with pytest.raises(CapExceededError):
            nearest_matching(start, lambda m: False, limit=50)


class TestSearch:
    def test_convex_family_has_no_disconnected_rotation_graph(self):
        # outcome recorded; nothing in the theory forces either answer
        assert search_disconnected_rotation(convex_family(ns=(3, 5, 7, 9), seeds=range(2))) is None

    def test_edge_flip_never_disconnected(self):
        assert search_disconnected_rotation(convex_family(ns=(5, 7), seeds=range(2)), FlipRule.EDGE_FLIP) is None


class TestReport:
    def test_triangle(self):
        r = analysis_report(TRI, timing=False)
        assert set(r) == REPORT_KEYS
        assert (r["vertex_count"], r["components"], r["diameter"]) == (3, 1, 1)
        assert r["runtime_ms"] is None

    def test_convex_rotation(self):
        r = analysis_report(convex_points(7, seed=1), ROT)
        assert r["components"] >= 1 and r["runtime_ms"] >= 0

    def test_disconnected(self):
        r = analysis_report(windmill_points(3, 100)[0], ROT, timing=False)
        assert r["components"] == 2 and r["diameter"] is None and r["witness_pair"] is None

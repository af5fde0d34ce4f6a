"""Exhaustive flip graphs of plane almost-perfect matchings."""

from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .geometry import PointSet, Segment, coords_cross
from .matching import Flip, FlipRule, Matching, format_matching, legal_flips
from .flipseq import FlipSequence

DEFAULT_CAP_N = 11
BFS_VERTEX_CAP = 10**6


class CapExceededError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    def __init__(self, components: list[int]):
        super().__init__(f"flip graph is disconnected: component sizes {components}")
        self.components = components


def enumerate_matchings(ps: PointSet, cap_n: int = DEFAULT_CAP_N) -> list[Matching]:
    """Every plane almost-perfect matching of ``ps``, sorted by canonical key.

    Backtracks over the lowest uncovered index: it is either the unmatched
    point or matched to a higher uncovered point without crossing earlier edges.
    """
    n = len(ps)
    if n % 2 != 1:
        raise ValueError("enumeration needs an odd number of points")
    if n > cap_n:
        raise CapExceededError(f"n={n} exceeds enumeration cap {cap_n}")
    pts = ps.points
    segs = [Segment(i, j) for i, j in combinations(range(n), 2)]
    crossing = {s: set() for s in segs}
    for s, t in combinations(segs, 2):
        if not set(s) & set(t) and coords_cross(pts[s.a], pts[s.b], pts[t.a], pts[t.b]):
            crossing[s].add(t)
            crossing[t].add(s)

    out: list[Matching] = []
    covered = [False] * n
    chosen: list[Segment] = []

    def rec(i: int, unmatched: int | None) -> None:
        while i < n and covered[i]:
            i += 1
        if i == n:
            out.append(Matching(ps, chosen, unmatched, check=False))
            return
        covered[i] = True
        if unmatched is None:
            rec(i + 1, i)
        for j in range(i + 1, n):
            if covered[j]:
                continue
            s = Segment(i, j)
            if any(t in crossing[s] for t in chosen):
                continue
            covered[j] = True
            chosen.append(s)
            rec(i + 1, unmatched)
            chosen.pop()
            covered[j] = False
        covered[i] = False

    rec(0, None)
    out.sort(key=lambda m: m.key)
    return out


def _flipped(m: Matching, f: Flip) -> Matching:
    edges = set(m.edges)
    edges.remove(Segment.of(f.q, f.r))
    edges.add(Segment.of(f.p, f.q))
    return Matching(m.host, edges, f.r, check=False)


@dataclass
class FlipGraph:
    host: PointSet
    rule: FlipRule
    vertices: list[Matching]
    adjacency: list[list[int]]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def index(self, m: Matching) -> int:
        return self._index[m.key]

    def __post_init__(self) -> None:
        self._index = {m.key: i for i, m in enumerate(self.vertices)}


def build_flip_graph(ps: PointSet, rule: FlipRule = FlipRule.EDGE_FLIP, cap_n: int = DEFAULT_CAP_N) -> FlipGraph:
    verts = enumerate_matchings(ps, cap_n)
    index = {m.key: i for i, m in enumerate(verts)}
    adj: list[set[int]] = [set() for _ in verts]
    for i, m in enumerate(verts):
        for f in legal_flips(m, rule):
            j = index[_flipped(m, f).key]
            adj[i].add(j)
            adj[j].add(i)
    return FlipGraph(ps, rule, verts, [sorted(a) for a in adj])


def _bfs(adjacency: list[list[int]], source: int) -> list[int]:
    dist = [-1] * len(adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in adjacency[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def bfs_distances(g: FlipGraph, source: int) -> list[int]:
    """Flip distance from vertex ``source`` to every vertex (-1 if unreachable)."""
    return _bfs(g.adjacency, source)


def connected_components(g: FlipGraph) -> list[int]:
    """Component sizes, in order of each component's smallest vertex."""
    seen = [False] * len(g.vertices)
    sizes = []
    for s in range(len(g.vertices)):
        if seen[s]:
            continue
        size = 0
        for v, d in enumerate(_bfs(g.adjacency, s)):
            if d >= 0:
                seen[v] = True
                size += 1
        sizes.append(size)
    return sizes


_shared_adjacency: list[list[int]] = []


def _init_worker(adjacency: list[list[int]]) -> None:
    global _shared_adjacency
    _shared_adjacency = adjacency


def _eccentricities(sources: list[int]) -> tuple[int, int, int]:
    best = (-1, 0, 0)
    for s in sources:
        dist = _bfs(_shared_adjacency, s)
        d = max(dist)
        if d > best[0]:
            best = (d, s, dist.index(d))
    return best


def diameter(g: FlipGraph, threads: int = 1) -> tuple[int, tuple[int, int]]:
    """Maximum flip distance and the first vertex pair attaining it.

    With ``threads > 1`` the BFS sources are split across worker processes;
    the result does not depend on the split.
    """
    comps = connected_components(g)
    if len(comps) > 1:
        raise DisconnectedGraphError(comps)
    if len(g.vertices) > BFS_VERTEX_CAP:
        raise CapExceededError(f"{len(g.vertices)} vertices exceed the BFS cap")
    sources = list(range(len(g.vertices)))
    if threads <= 1:
        _init_worker(g.adjacency)
        results = [_eccentricities(sources)]
    else:
        chunks = [sources[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(g.adjacency,)) as pool:
            results = list(pool.map(_eccentricities, chunks))
    # ties resolved towards the smallest source so the witness is split-independent
    d, s, t = max(results, key=lambda r: (r[0], -r[1]))
    return d, (s, t)


# -- implicit searches (no enumeration cap) -----------------------------------


def shortest_flip_sequence(m1: Matching, m2: Matching, rule: FlipRule = FlipRule.EDGE_FLIP) -> FlipSequence | None:
    """A minimum-length flip sequence from ``m1`` to ``m2`` by breadth-first search."""
    return nearest_matching(m1, lambda m: m.key == m2.key, rule)


def nearest_matching(
    start: Matching,
    goal: Callable[[Matching], bool],
    rule: FlipRule = FlipRule.EDGE_FLIP,
    limit: int = BFS_VERTEX_CAP,
) -> FlipSequence | None:
    """Shortest flip sequence from ``start`` to any matching satisfying ``goal``."""
    parent: dict = {start.key: None}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        if goal(m):
            flips = []
            key = m.key
            while parent[key] is not None:
                key, f = parent[key]
                flips.append(f)
            return FlipSequence(start, tuple(reversed(flips)))
        for f in legal_flips(m, rule):
            nxt = _flipped(m, f)
            if nxt.key not in parent:
                if len(parent) >= limit:
                    raise CapExceededError("implicit BFS exceeded its vertex limit")
                parent[nxt.key] = (m.key, f)
                queue.append(nxt)
    return None


# -- disconnected rotation graphs ---------------------------------------------


@dataclass
class RotationWitness:
    points: PointSet
    rule: FlipRule
    components: list[int]
    isolated: Matching | None
    instance_index: int


def search_disconnected_rotation(
    instances: Iterable[PointSet],
    rule: FlipRule = FlipRule.EMPTY_TRIANGLE_ROTATION,
    cap_n: int = DEFAULT_CAP_N,
) -> RotationWitness | None:
    """First instance whose flip graph under ``rule`` is disconnected.

    The witness carries a matching with no legal move under ``rule`` when one
    exists. Returns None once ``instances`` is exhausted.
    """
    for k, ps in enumerate(instances):
        g = build_flip_graph(ps, rule, cap_n)
        comps = connected_components(g)
        if len(comps) > 1:
            isolated = next((m for m, a in zip(g.vertices, g.adjacency) if not a), None)
            return RotationWitness(ps, rule, comps, isolated, k)
    return None


# -- reports ------------------------------------------------------------------


def _matching_json(m: Matching) -> dict:
    return {"unmatched": m.unmatched, "edges": [list(s) for s in m.key[0]]}


def analysis_report(
    ps: PointSet,
    rule: FlipRule = FlipRule.EDGE_FLIP,
    cap_n: int = DEFAULT_CAP_N,
    threads: int = 1,
    timing: bool = True,
) -> dict:
    """JSON-ready summary of the flip graph of ``ps``.

    ``runtime_ms`` is None when ``timing`` is off, which makes the report
    byte-stable across runs.
    """
    t0 = time.perf_counter()
    g = build_flip_graph(ps, rule, cap_n)
    comps = connected_components(g)
    diam = witness = None
    if len(comps) == 1:
        diam, (s, t) = diameter(g, threads)
        witness = [_matching_json(g.vertices[s]), _matching_json(g.vertices[t])]
    elapsed = round((time.perf_counter() - t0) * 1000, 3)
    return {
        "n": len(ps),
        "rule": rule.value,
        "vertex_count": len(g.vertices),
        "edge_count": g.edge_count,
        "components": len(comps),
        "diameter": diam,
        "witness_pair": witness,
        "runtime_ms": elapsed if timing else None,
    }


def describe_witness(w: RotationWitness) -> str:
    lines = [f"instance {w.instance_index}: n={len(w.points)} rule={w.rule.value} components={w.components}"]
    if w.isolated is not None:
        lines.append("isolated matching:")
        lines.append(format_matching(w.isolated).rstrip("\n"))
    return "\n".join(lines)

"""Segment endpoint visibility graphs and plane Hamiltonian polygons.

The unmatched point of an almost-perfect matching is duplicated
combinatorially: the companion vertex gets the index ``len(host)``, sits at
the same coordinates and sees exactly what the original sees. Planarity tests
treat the pair as one geometric point, and the zero-length companion segment
crosses nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .geometry import PointSet, Segment, convex_hull, coords_cross, open_segment_hits
from .matching import Matching


class PolygonSearchError(RuntimeError):
    """No plane Hamiltonian cycle found, although one always exists."""


class SegmentSetError(ValueError):
    pass


@dataclass(frozen=True)
class SegmentSet:
    host: PointSet
    segments: tuple[Segment, ...]
    duplicate: int | None = None

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for s in self.real_segments:
            if s.a in seen or s.b in seen:
                raise SegmentSetError(f"segment endpoints repeat at {tuple(s)}")
            seen.update(s)
        if self.duplicate is not None and self.duplicate in seen:
            raise SegmentSetError("duplicated point must not be a segment endpoint")
        pts = self.host.points
        for s, t in combinations(self.real_segments, 2):
            if coords_cross(pts[s.a], pts[s.b], pts[t.a], pts[t.b]):
                raise SegmentSetError(f"segments {tuple(s)} and {tuple(t)} cross")

    @property
    def companion(self) -> int | None:
        return None if self.duplicate is None else len(self.host)

    @cached_property
    def real_segments(self) -> tuple[Segment, ...]:
        c = self.companion
        return tuple(s for s in self.segments if c is None or c not in s)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        vs = {v for s in self.real_segments for v in s}
        if self.duplicate is not None:
            vs.update((self.duplicate, self.companion))
        return tuple(sorted(vs))

    def geometric(self, v: int) -> int:
        """Host index carrying the coordinates of vertex ``v``."""
        return self.duplicate if v == self.companion else v

    def coords(self, v: int):
        return self.host.points[self.geometric(v)]


@dataclass(frozen=True)
class VisibilityGraph:
    segset: SegmentSet
    adjacency: dict[int, frozenset[int]]

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.segset.vertices

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency.values()) // 2


@dataclass(frozen=True)
class HamiltonianPolygon:
    cycle: tuple[int, ...]

    def edges(self) -> list[tuple[int, int]]:
        k = len(self.cycle)
        if k == 2:
            return [(self.cycle[0], self.cycle[1])]
        return [(self.cycle[i], self.cycle[(i + 1) % k]) for i in range(k)]


def _sees(ss: SegmentSet, u: int, v: int) -> bool:
    pu, pv = ss.coords(u), ss.coords(v)
    pts = ss.host.points
    return not any(open_segment_hits(pu, pv, pts[s.a], pts[s.b]) for s in ss.real_segments)


def build_visibility_graph(ss: SegmentSet) -> VisibilityGraph:
    """Edges are the segments plus every pair of endpoints that see each other."""
    verts = [v for v in ss.vertices if v != ss.companion]
    adj: dict[int, set[int]] = {v: set() for v in ss.vertices}
    seg_set = set(ss.real_segments)
    for u, v in combinations(verts, 2):
        if Segment(u, v) in seg_set or _sees(ss, u, v):
            adj[u].add(v)
            adj[v].add(u)
    if ss.duplicate is not None:
        p, c = ss.duplicate, ss.companion
        for u in adj[p]:
            adj[u].add(c)
        adj[c] = set(adj[p]) | {p}
        adj[p].add(c)
    return VisibilityGraph(ss, {v: frozenset(a) for v, a in adj.items()})


def duplicate_unmatched(m: Matching) -> SegmentSet:
    """Matching edges plus the zero-length companion segment of the unmatched point."""
    if len(m.host) % 2 != 1:
        raise SegmentSetError("duplication needs an almost-perfect matching on an odd set")
    p = m.unmatched
    segs = tuple(sorted(m.edges)) + (Segment(p, len(m.host)),)
    return SegmentSet(m.host, segs, duplicate=p)


def _edges_cross(ss: SegmentSet, e: tuple[int, int], f: tuple[int, int]) -> bool:
    a, b = ss.geometric(e[0]), ss.geometric(e[1])
    c, d = ss.geometric(f[0]), ss.geometric(f[1])
    if a == b or c == d or len({a, b, c, d}) < 4:
        return False
    pts = ss.host.points
    return coords_cross(pts[a], pts[b], pts[c], pts[d])


def validate_polygon(hp: HamiltonianPolygon, ss: SegmentSet) -> str | None:
    """First violated polygon property, or None when ``hp`` is a valid Hamiltonian polygon."""
    cyc = hp.cycle
    if sorted(cyc) != sorted(ss.vertices) or len(set(cyc)) != len(cyc):
        return "cycle is not Hamiltonian over the segment endpoints"
    vg = build_visibility_graph(ss)
    edges = hp.edges()
    for u, v in edges:
        if not vg.has_edge(u, v):
            return f"edge {u}-{v} is not a visibility edge"
    for e, f in combinations(edges, 2):
        if _edges_cross(ss, e, f):
            return f"cycle edges {e} and {f} cross"
    for e in edges:
        for s in ss.real_segments:
            if _edges_cross(ss, e, (s.a, s.b)):
                return f"cycle edge {e} crosses segment {tuple(s)}"
    return None


def plane_hamiltonian_polygon(vg: VisibilityGraph) -> HamiltonianPolygon:
    """Deterministic backtracking search for a plane Hamiltonian cycle.

    Starts at the leftmost endpoint (a hull vertex) and extends a path,
    preferring hull vertices and then the candidate with the fewest usable
    edges left. An edge becomes unusable once it crosses a chosen cycle edge;
    a branch is cut as soon as some unvisited vertex has fewer than two usable
    edges or the usable edges no longer connect the unvisited vertices to the
    path ends. Visibility edges never cross the segments, so the union with
    the segments stays plane.
    """
    ss = vg.segset
    verts = list(vg.vertices)
    k = len(verts)
    if k == 2:
        u, v = verts
        if not vg.has_edge(u, v):
            raise PolygonSearchError(f"two isolated vertices {verts}")
        return HamiltonianPolygon((u, v))
    if k < 2:
        raise PolygonSearchError("need at least two vertices")

    geo = sorted({ss.geometric(v) for v in verts})
    hull_idx = convex_hull(ss.host.subset(geo)) if len(geo) >= 3 else list(range(len(geo)))
    on_hull = {geo[i] for i in hull_idx}

    edges = sorted((u, v) for u in verts for v in vg.adjacency[u] if u < v)
    eid = {e: i for i, e in enumerate(edges)}
    crosses = [0] * len(edges)
    for i, e in enumerate(edges):
        for j in range(i + 1, len(edges)):
            if _edges_cross(ss, e, edges[j]):
                crosses[i] |= 1 << j
                crosses[j] |= 1 << i
    incident: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for i, (u, v) in enumerate(edges):
        incident[u].append((i, v))
        incident[v].append((i, u))

    start = min(verts, key=lambda v: (tuple(ss.coords(v)), v))
    path = [start]
    used = {start}

    def usable(v: int, blocked: int) -> list[tuple[int, int]]:
        head = path[-1]
        return [
            (i, u) for i, u in incident[v]
            if not blocked >> i & 1 and (u not in used or u == head or u == start)
        ]

    def feasible(blocked: int) -> bool:
        rest = [v for v in verts if v not in used]
        if not rest:
            return True
        for v in rest:
            if len(usable(v, blocked)) < 2:
                return False
        if not any(u not in used for i, u in incident[start] if not blocked >> i & 1):
            return False
        # unvisited vertices must stay connected to the path ends
        head = path[-1]
        seen = {head}
        stack = [head]
        while stack:
            x = stack.pop()
            for i, u in incident[x]:
                if blocked >> i & 1 or u in seen:
                    continue
                if u in used and u != start:
                    continue
                if x == start and u != head:
                    continue
                seen.add(u)
                if u != start:
                    stack.append(u)
        return all(v in seen for v in rest)

    def extend(blocked: int) -> bool:
        head = path[-1]
        if len(path) == k:
            i = eid.get((min(head, start), max(head, start)))
            return i is not None and not blocked >> i & 1
        cands = [(i, v) for i, v in incident[head] if v not in used and not blocked >> i & 1]
        cands.sort(key=lambda c: (ss.geometric(c[1]) not in on_hull, len(usable(c[1], blocked | crosses[c[0]])), c[1]))
        for i, v in cands:
            nb = blocked | crosses[i]
            path.append(v)
            used.add(v)
            if feasible(nb) and extend(nb):
                return True
            used.discard(v)
            path.pop()
        return False

    if not extend(0):
        raise PolygonSearchError(f"no plane Hamiltonian cycle for segments {ss.segments} on {ss.host!r}")
    return HamiltonianPolygon(tuple(path))


def segment_set(host: PointSet, segments: Iterable[Iterable[int]]) -> SegmentSet:
    return SegmentSet(host, tuple(sorted(Segment.of(*s) for s in segments)))

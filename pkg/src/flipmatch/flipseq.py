"""Flip sequences: routing the unmatched point, canonicalization and convex routing."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .altpath import AltGraph, find_alternating_path
from .geometry import FormatError, PointSet, Segment, convex_hull, is_convex_position, sort_left_to_right
from .matching import (
    Flip,
    FlipRule,
    Matching,
    MatchingError,
    apply_flip,
    flip_problem,
    format_matching,
    parse_matching_lines,
)
from .visibility import build_visibility_graph, duplicate_unmatched, plane_hamiltonian_polygon


class SequenceError(ValueError):
    pass


@dataclass(frozen=True)
class FlipSequence:
    start: Matching
    flips: tuple[Flip, ...] = ()

    def __len__(self) -> int:
        return len(self.flips)

    def matchings(self, rule: FlipRule = FlipRule.EDGE_FLIP) -> Iterator[Matching]:
        """Start matching followed by the matching after each flip."""
        m = self.start
        yield m
        for f in self.flips:
            m = apply_flip(m, f, rule)
            yield m

    @cached_property
    def end(self) -> Matching:
        m = self.start
        for f in self.flips:
            m = apply_flip(m, f)
        return m

    def then(self, other: "FlipSequence") -> "FlipSequence":
        if other.start != self.end:
            raise SequenceError("sequences do not join: end and start differ")
        return FlipSequence(self.start, self.flips + other.flips)


def validate_sequence(s: FlipSequence, rule: FlipRule = FlipRule.EDGE_FLIP) -> int | None:
    """Index of the first illegal flip, or None if the whole sequence replays."""
    m = s.start
    for i, f in enumerate(s.flips):
        if flip_problem(m, f, rule) is not None:
            return i
        m = apply_flip(m, f, rule)
    return None


def reverse(s: FlipSequence) -> FlipSequence:
    return FlipSequence(s.end, tuple(f.reversed() for f in reversed(s.flips)))


# -- routing the unmatched point --------------------------------------------


def routing_path(m: Matching, t: int) -> list[int]:
    """Alternating path ``t, partner(t), ..., p`` in the polygon-plus-matching graph.

    Edges alternate matching / polygon edge, starting with a matching edge and
    ending with a polygon edge into the unmatched point ``p``. The duplicate of
    ``p`` is already contracted away.
    """
    p = m.unmatched
    if t == p:
        return [t]
    if t not in m.partner:
        raise MatchingError(f"unknown point {t}")
    ss = duplicate_unmatched(m)
    polygon = plane_hamiltonian_polygon(build_visibility_graph(ss))
    g = AltGraph(polygon.cycle, [tuple(s) for s in ss.segments])
    path = find_alternating_path(g, (t, m.partner[t]), p)
    # the companion can only sit right before p, joined to it by the matching
    # edge p-p'; dropping it leaves a polygon edge into p
    verts = [v for v in path.vertices if v != ss.companion]
    if len(verts) % 2 != 1:
        raise SequenceError(f"routing path {path.vertices} does not end with a polygon edge")
    return verts


def flips_from_path(path: Sequence[int]) -> list[Flip]:
    """Translate an alternating path ending at the unmatched point into flips.

    Walking back from the unmatched end, each (non-matching edge into q,
    matching edge q-r) pair is one flip.
    """
    if len(path) % 2 != 1:
        raise SequenceError("path must have an even number of edges")
    flips = []
    cur = path[-1]
    for j in range(len(path) - 3, -1, -2):
        q, r = path[j + 1], path[j]
        flips.append(Flip(cur, q, r))
        cur = r
    return flips


def route_unmatched(m: Matching, t: int) -> FlipSequence:
    """At most ``m.m`` flips after which ``t`` is the unmatched point."""
    if t == m.unmatched:
        return FlipSequence(m)
    return FlipSequence(m, tuple(flips_from_path(routing_path(m, t))))


def _restrict(m: Matching, keep: Sequence[int]) -> Matching:
    local = {g: i for i, g in enumerate(keep)}
    edges = []
    for a, b in m.edges:
        if a in local and b in local:
            edges.append((local[a], local[b]))
        elif a in local or b in local:
            raise SequenceError("matching edge leaves the restricted point set")
    return Matching(m.host.subset(keep), edges, local[m.unmatched], check=False)


def to_canonical(m: Matching) -> FlipSequence:
    """Flip ``m`` to the left-to-right canonical matching, one leftmost pair at a time."""
    order = sort_left_to_right(m.host)
    flips: list[Flip] = []
    cur = m
    for i in range(0, len(order) - 1, 2):
        left, right = order[i], order[i + 1]
        if Segment.of(left, right) in cur.edges:
            continue
        suffix = order[i:]
        local = _restrict(cur, suffix)
        routed = route_unmatched(local, 0)
        for f in routed.flips:
            g = Flip(suffix[f.p], suffix[f.q], suffix[f.r])
            cur = apply_flip(cur, g)
            flips.append(g)
        last = Flip(left, right, cur.partner[right])
        cur = apply_flip(cur, last)
        flips.append(last)
    return FlipSequence(m, tuple(flips))


def route(m1: Matching, m2: Matching, trim: bool = True) -> FlipSequence:
    """``m1`` to canonical, then canonical back to ``m2``.

    With ``trim`` a shared tail of the two canonicalizations is dropped: equal
    last flips mean equal matchings just before them.
    """
    if m1.host != m2.host:
        raise SequenceError("matchings live on different point sets")
    a = list(to_canonical(m1).flips)
    b = list(to_canonical(m2).flips)
    if trim:
        while a and b and a[-1] == b[-1]:
            a.pop()
            b.pop()
    there = FlipSequence(m1, tuple(a))
    back = reverse(FlipSequence(m2, tuple(b)))
    return there.then(back)


# -- convex position ---------------------------------------------------------


@dataclass(frozen=True)
class DualTree:
    """Faces of a convex polygon cut along matching chords.

    ``faces`` hold host indices in counterclockwise order; a chord that is a
    hull edge cuts off a two-vertex (degenerate) leaf face. ``links`` maps each
    chord to the pair of faces it separates.
    """

    faces: tuple[tuple[int, ...], ...]
    links: dict[Segment, tuple[int, int]]
    root: int

    def neighbors(self, f: int) -> list[tuple[Segment, int]]:
        out = []
        for chord, (x, y) in self.links.items():
            if x == f:
                out.append((chord, y))
            elif y == f:
                out.append((chord, x))
        return sorted(out)

    def is_tree(self) -> bool:
        n = len(self.faces)
        if len(self.links) != n - 1:
            return False
        seen = {self.root}
        stack = [self.root]
        while stack:
            f = stack.pop()
            for _, g in self.neighbors(f):
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return len(seen) == n


def build_dual_tree(m: Matching) -> DualTree:
    hull = convex_hull(m.host) if len(m.host) >= 3 else list(range(len(m.host)))
    if len(hull) != len(m.host):
        raise SequenceError("dual tree needs points in convex position")
    faces: list[list[int]] = [hull]
    links: dict[Segment, tuple[int, int]] = {}
    for chord in sorted(m.edges):
        a, b = chord
        fi = next(i for i, f in enumerate(faces) if a in f and b in f)
        f = faces[fi]
        ia, ib = sorted((f.index(a), f.index(b)))
        inner = f[ia:ib + 1]
        outer = f[ib:] + f[:ia + 1]
        faces[fi] = outer
        faces.append(inner)
        new = len(faces) - 1
        # chords previously bounding the split face now bound one of the halves
        for other, (x, y) in list(links.items()):
            if fi in (x, y) and other[0] in inner and other[1] in inner:
                links[other] = (new, y) if x == fi else (x, new)
        links[chord] = (fi, new)
    root = next(i for i, f in enumerate(faces) if m.unmatched in f)
    return DualTree(tuple(tuple(f) for f in faces), links, root)


def convex_route_to_hull(m: Matching, target: Matching) -> FlipSequence:
    """At most ``2n`` flips from ``m`` to the hull-edge matching ``target``.

    With the unmatched point labelled by its target edge, that edge is flipped
    in directly (hull edges are never crossed). With the unmatched point being
    the target's unmatched point ``x``, a non-hull chord ``v_i w_j`` bounding
    the root face is flipped to ``x v_i`` and ``w_j`` becomes unmatched. Target
    edges, once present, are never removed.
    """
    ps = m.host
    if target.host != ps:
        raise SequenceError("target lives on a different point set")
    if not is_convex_position(ps):
        raise SequenceError("convex routing needs points in convex position")
    hull = convex_hull(ps) if len(ps) >= 3 else list(range(len(ps)))
    x = target.unmatched
    k = hull.index(x)
    label = {v: i for i, v in enumerate(hull[k:] + hull[:k])}  # q_0 = x, q_1, ...
    if any(abs(label[a] - label[b]) != 1 or min(label[a], label[b]) % 2 != 1 for a, b in target.edges):
        raise SequenceError("target is not the hull-edge matching for its unmatched point")

    n = len(ps)
    flips: list[Flip] = []
    cur = m
    while cur != target:
        if len(flips) >= 2 * n:
            raise SequenceError("convex routing stalled beyond 2n flips")
        p = cur.unmatched
        if p != x:
            q = target.partner[p]
            f = Flip(p, q, cur.partner[q])
        else:
            tree = build_dual_tree(cur)
            chords = [c for c, _ in tree.neighbors(tree.root) if c not in target.edges]
            if not chords:
                raise SequenceError("no non-hull chord on the root face")
            a, b = chords[0]
            vi, wj = (a, b) if label[a] % 2 == 1 else (b, a)
            if not (label[vi] % 2 == 1 and label[wj] % 2 == 0 and label[vi] < label[wj]):
                raise SequenceError(f"chord {a}-{b} violates the parity ordering")
            f = Flip(x, vi, wj)
        cur = apply_flip(cur, f)
        flips.append(f)
    return FlipSequence(m, tuple(flips))


# -- sequence text format ----------------------------------------------------


def format_sequence(s: FlipSequence) -> str:
    lines = ["start", format_matching(s.start).rstrip("\n")]
    lines.extend(f"flip {f.p} {f.q} {f.r}" for f in s.flips)
    return "\n".join(lines) + "\n"


def parse_sequence(text: str, host: PointSet) -> FlipSequence:
    """Parse ``start``, a matching block, then ``flip p q r`` lines.

    Flip legality is not checked here; use ``validate_sequence``.
    """
    numbered = list(enumerate(text.splitlines(), start=1))
    body = [(i, l) for i, l in numbered if l.strip() and not l.strip().startswith("#")]
    if not body or body[0][1].strip() != "start":
        raise FormatError("sequence must begin with 'start'", body[0][0] if body else None)
    block: list[tuple[int, str]] = []
    flips: list[Flip] = []
    for lineno, line in body[1:]:
        parts = line.split()
        if parts[0] == "flip":
            if len(parts) != 4:
                raise FormatError(f"bad flip line {line!r}", lineno)
            try:
                flips.append(Flip(*(int(v) for v in parts[1:])))
            except ValueError:
                raise FormatError(f"non-integer index in {line!r}", lineno) from None
        elif flips:
            raise FormatError("matching lines after the first flip", lineno)
        else:
            block.append((lineno, line))
    return FlipSequence(parse_matching_lines(block, host), tuple(flips))


def replay(start: Matching, flips: Iterable[Flip]) -> Matching:
    m = start
    for f in flips:
        m = apply_flip(m, f)
    return m

"""Plane almost-perfect matchings and the two single-edge flip rules."""

from __future__ import annotations

from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from .geometry import (
    FormatError,
    PointSet,
    Segment,
    convex_hull,
    coords_cross,
    is_convex_position,
    segments_cross,
    sort_left_to_right,
    triangle_contains,
)


class FlipRule(Enum):
    EDGE_FLIP = "flip"
    EMPTY_TRIANGLE_ROTATION = "rotation"


class Flip(NamedTuple):
    """``p`` (unmatched) gets matched to pivot ``q``; ``q``'s old partner ``r`` becomes unmatched."""

    p: int
    q: int
    r: int

    def reversed(self) -> "Flip":
        return Flip(self.r, self.q, self.p)


class MatchingError(ValueError):
    pass


class IllegalFlipError(MatchingError):
    pass


class Matching:
    """``m`` disjoint segments on a host of ``2m + 1`` points plus the unmatched index.

    Treated as immutable. ``check=False`` skips structure and planarity
    validation for callers that preserve both by construction.
    """

    def __init__(self, host: PointSet, edges: Iterable[Iterable[int]], unmatched: int, check: bool = True):
        self.host = host
        self.edges = frozenset(Segment.of(*e) for e in edges)
        self.unmatched = unmatched
        if check:
            self._check_structure()
            if not is_plane(self):
                raise MatchingError("matching is not plane")

    def _check_structure(self) -> None:
        n = len(self.host)
        if n % 2 != 1:
            raise MatchingError(f"host has even size {n}")
        if len(self.edges) != (n - 1) // 2:
            raise MatchingError(f"expected {(n - 1) // 2} edges, got {len(self.edges)}")
        if not 0 <= self.unmatched < n:
            raise MatchingError(f"unmatched index {self.unmatched} out of range")
        covered = {self.unmatched}
        for s in self.edges:
            for v in s:
                if not 0 <= v < n:
                    raise MatchingError(f"edge {tuple(s)} out of range")
                if v in covered:
                    raise MatchingError(f"point {v} covered twice")
                covered.add(v)

    @cached_property
    def key(self) -> tuple[tuple[Segment, ...], int]:
        """Canonical encoding: sorted edge list plus the unmatched index."""
        return tuple(sorted(self.edges)), self.unmatched

    @cached_property
    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self.key == other.key and self.host == other.host

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        edges = ", ".join(f"{a}-{b}" for a, b in self.key[0])
        return f"Matching({{{edges}}}, unmatched={self.unmatched})"


def is_plane(m: Matching) -> bool:
    return not any(segments_cross(s, t, m.host) for s, t in combinations(m.edges, 2))


def _pq_is_free(m: Matching, q: int) -> bool:
    pts = m.host.points
    a, b = pts[m.unmatched], pts[q]
    for s in m.edges:
        if q in s:
            continue
        if coords_cross(a, b, pts[s.a], pts[s.b]):
            return False
    return True


def _triangle_is_empty(host: PointSet, f: Flip) -> bool:
    pts = host.points
    a, b, c = pts[f.p], pts[f.q], pts[f.r]
    return not any(
        triangle_contains(a, b, c, z) for i, z in enumerate(pts) if i not in (f.p, f.q, f.r)
    )


def legal_flips(m: Matching, rule: FlipRule = FlipRule.EDGE_FLIP) -> list[Flip]:
    """All legal flips of ``m`` under ``rule``, ordered by pivot index."""
    p = m.unmatched
    partner = m.partner
    out = []
    for q in sorted(partner):
        if not _pq_is_free(m, q):
            continue
        f = Flip(p, q, partner[q])
        if rule is FlipRule.EMPTY_TRIANGLE_ROTATION and not _triangle_is_empty(m.host, f):
            continue
        out.append(f)
    return out


def flip_problem(m: Matching, f: Flip, rule: FlipRule = FlipRule.EDGE_FLIP) -> str | None:
    """Reason ``f`` is illegal in ``m``, or None when it is legal."""
    if f.p != m.unmatched:
        return f"p={f.p} is not the unmatched point {m.unmatched}"
    if f.q == f.p or f.q not in m.partner:
        return f"q={f.q} is not a matched point"
    if m.partner[f.q] != f.r:
        return f"r={f.r} is not the partner of q={f.q}"
    if not _pq_is_free(m, f.q):
        return f"segment {f.p}-{f.q} crosses the matching"
    if rule is FlipRule.EMPTY_TRIANGLE_ROTATION and not _triangle_is_empty(m.host, f):
        return f"triangle {f.p},{f.q},{f.r} is not empty"
    return None


def apply_flip(m: Matching, f: Flip, rule: FlipRule = FlipRule.EDGE_FLIP) -> Matching:
    problem = flip_problem(m, f, rule)
    if problem is not None:
        raise IllegalFlipError(problem)
    edges = set(m.edges)
    edges.remove(Segment.of(f.q, f.r))
    edges.add(Segment.of(f.p, f.q))
    # legality implies planarity; structure is kept by construction
    return Matching(m.host, edges, f.r, check=False)


def canonical_matching(ps: PointSet) -> Matching:
    """Consecutive pairs in left-to-right order; the rightmost point stays unmatched."""
    if len(ps) % 2 != 1:
        raise MatchingError("canonical matching needs an odd number of points")
    order = sort_left_to_right(ps)
    edges = [(order[i], order[i + 1]) for i in range(0, len(order) - 1, 2)]
    return Matching(ps, edges, order[-1], check=False)


def convex_hull_matching(ps: PointSet, x: int) -> Matching:
    """Hull-edge matching leaving ``x`` unmatched.

    With the hull read counterclockwise from ``x`` as q0 = x, q1, ..., q2m the
    edges are q1q2, q3q4, ..., q(2m-1)q(2m).
    """
    if len(ps) % 2 != 1:
        raise MatchingError("needs an odd number of points")
    if not is_convex_position(ps):
        raise MatchingError("point set is not in convex position")
    hull = convex_hull(ps) if len(ps) >= 3 else list(range(len(ps)))
    k = hull.index(x)
    q = hull[k:] + hull[:k]
    edges = [(q[i], q[i + 1]) for i in range(1, len(q) - 1, 2)]
    return Matching(ps, edges, x, check=False)


# -- matching text format ----------------------------------------------------


def format_matching(m: Matching) -> str:
    lines = [f"unmatched {m.unmatched}"]
    lines.extend(f"{a} {b}" for a, b in m.key[0])
    return "\n".join(lines) + "\n"


def parse_matching_lines(lines: Iterable[tuple[int, str]], host: PointSet) -> Matching:
    unmatched = None
    edges = []
    for lineno, raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "unmatched":
                if len(parts) != 2 or unmatched is not None:
                    raise FormatError("bad 'unmatched' line", lineno)
                unmatched = int(parts[1])
            elif len(parts) == 2:
                edges.append((int(parts[0]), int(parts[1])))
            else:
                raise FormatError(f"unexpected line {line!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"non-integer index in {line!r}", lineno) from None
    if unmatched is None:
        raise FormatError("missing 'unmatched' line")
    return Matching(host, edges, unmatched)


def parse_matching(text: str, host: PointSet) -> Matching:
    """Parse ``unmatched <i>`` followed by ``<i> <j>`` edge lines; validates the result."""
    return parse_matching_lines(enumerate(text.splitlines(), start=1), host)

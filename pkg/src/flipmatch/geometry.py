"""Exact integer geometry on small planar point sets.

All predicates work on integer coordinates only. Coordinates are bounded by
``COORD_BOUND`` so every 3-point determinant stays inside a signed 64-bit
range; Python integers would not overflow anyway, but the bound keeps results
portable to fixed-width implementations and is checked on ingestion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

COORD_BOUND = 1 << 20
_DET_LIMIT = 1 << 63


class Point(NamedTuple):
    x: int
    y: int


class Segment(NamedTuple):
    """Segment between two point indices, stored with ``a < b``."""

    a: int
    b: int

    @classmethod
    def of(cls, i: int, j: int) -> "Segment":
        if i == j:
            raise ValueError(f"degenerate segment ({i}, {j})")
        return cls(i, j) if i < j else cls(j, i)

    def other(self, i: int) -> int:
        if i == self.a:
            return self.b
        if i == self.b:
            return self.a
        raise ValueError(f"{i} is not an endpoint of {self}")


class GeneralPositionError(ValueError):
    def __init__(self, violation: "Violation"):
        super().__init__(str(violation))
        self.violation = violation


@dataclass(frozen=True)
class Violation:
    kind: str  # "duplicate" | "collinear" | "bound"
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind} violation at indices {self.indices}"


class PointSet:
    """Immutable, indexed list of integer points.

    With ``validate=True`` (the default) the points must be pairwise distinct,
    inside the coordinate bound and free of collinear triples.
    """

    __slots__ = ("points", "_hash")

    def __init__(self, points: Iterable[Sequence[int]], validate: bool = True):
        self.points = tuple(Point(int(p[0]), int(p[1])) for p in points)
        self._hash = hash(self.points)
        if validate:
            bad = validate_general_position(self)
            if bad is not None:
                raise GeneralPositionError(bad)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PointSet({[tuple(p) for p in self.points]})"

    def subset(self, indices: Sequence[int]) -> "PointSet":
        """Points at ``indices`` re-indexed 0..k-1; general position is inherited."""
        return PointSet((self.points[i] for i in indices), validate=False)


def orient(p: Sequence[int], q: Sequence[int], r: Sequence[int]) -> int:
    """Sign of (q - p) x (r - p): +1 counterclockwise, 0 collinear, -1 clockwise."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if not -_DET_LIMIT < d < _DET_LIMIT:
        raise OverflowError("orientation determinant exceeds 64-bit range")
    return (d > 0) - (d < 0)


def _on_closed_segment(p: Sequence[int], a: Sequence[int], b: Sequence[int]) -> bool:
    # p is known to be collinear with a, b
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def closed_segments_intersect(a: Sequence[int], b: Sequence[int], c: Sequence[int], d: Sequence[int]) -> bool:
    """Whether closed segments ab and cd share at least one point."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _on_closed_segment(c, a, b))
        or (o2 == 0 and _on_closed_segment(d, a, b))
        or (o3 == 0 and _on_closed_segment(a, c, d))
        or (o4 == 0 and _on_closed_segment(b, c, d))
    )


def coords_cross(a: Sequence[int], b: Sequence[int], c: Sequence[int], d: Sequence[int]) -> bool:
    """Proper crossing of ab and cd for points in general position."""
    return orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0


def segments_cross(s: Segment, t: Segment, ps: PointSet) -> bool:
    """True iff the closed segments meet somewhere other than a shared endpoint.

    Segments with a common endpoint never cross.
    """
    if s.a in t or s.b in t:
        return False
    pts = ps.points
    return closed_segments_intersect(pts[s.a], pts[s.b], pts[t.a], pts[t.b])


def open_segment_hits(p: Sequence[int], q: Sequence[int], x: Sequence[int], y: Sequence[int]) -> bool:
    """Whether the open segment pq meets the closed segment xy (coordinates)."""
    o1 = orient(p, q, x)
    o2 = orient(p, q, y)
    if o1 * o2 > 0:
        return False
    dx, dy = q[0] - p[0], q[1] - p[1]
    length2 = dx * dx + dy * dy

    def along(z: Sequence[int]) -> int:
        return (z[0] - p[0]) * dx + (z[1] - p[1]) * dy

    if o1 == 0 and o2 == 0:
        lo, hi = sorted((along(x), along(y)))
        return lo < length2 and hi > 0
    if o1 == 0:
        return 0 < along(x) < length2
    if o2 == 0:
        return 0 < along(y) < length2
    # x and y strictly on opposite sides of line pq: the lines meet at a single
    # point interior to xy, which lies inside open pq iff p, q straddle xy.
    return orient(x, y, p) * orient(x, y, q) < 0


def open_segment_blocked(p: int, q: int, segs: Iterable[Segment], ps: PointSet) -> bool:
    """True iff the open segment between points ``p`` and ``q`` meets any of ``segs``."""
    if p == q:
        raise ValueError("p and q must differ")
    pts = ps.points
    a, b = pts[p], pts[q]
    return any(open_segment_hits(a, b, pts[s.a], pts[s.b]) for s in segs)


def validate_general_position(ps: PointSet) -> Violation | None:
    """First bound, duplicate or collinear violation, or None."""
    pts = ps.points
    for i, (x, y) in enumerate(pts):
        if abs(x) > COORD_BOUND or abs(y) > COORD_BOUND:
            return Violation("bound", (i,))
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            return Violation("duplicate", (seen[p], i))
        seen[p] = i
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orient(pts[i], pts[j], pts[k]) == 0:
                    return Violation("collinear", (i, j, k))
    return None


def sort_left_to_right(ps: PointSet) -> list[int]:
    """Indices ordered by x, ties broken by y."""
    return sorted(range(len(ps)), key=lambda i: ps.points[i])


def convex_hull(ps: PointSet) -> list[int]:
    """Hull vertex indices, counterclockwise from the lexicographically smallest point."""
    order = sort_left_to_right(ps)
    if len(order) < 3:
        return order
    pts = ps.points

    def chain(indices: Iterable[int]) -> list[int]:
        out: list[int] = []
        for i in indices:
            while len(out) >= 2 and orient(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def is_convex_position(ps: PointSet) -> bool:
    return len(convex_hull(ps)) == len(ps)


def triangle_contains(a: Sequence[int], b: Sequence[int], c: Sequence[int], z: Sequence[int]) -> bool:
    """Whether z lies in the closed triangle abc."""
    o1 = orient(a, b, z)
    o2 = orient(b, c, z)
    o3 = orient(c, a, z)
    return (o1 >= 0 and o2 >= 0 and o3 >= 0) or (o1 <= 0 and o2 <= 0 and o3 <= 0)


# -- point set text format ---------------------------------------------------


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def parse_points(text: str, validate: bool = True) -> PointSet:
    """One ``x y`` pair per line; ``#`` starts a comment line."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected two integers, got {line!r}", lineno)
        try:
            points.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"non-integer coordinate in {line!r}", lineno) from None
    return PointSet(points, validate=validate)


def format_points(ps: PointSet, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.extend(f"{p.x} {p.y}" for p in ps)
    return "\n".join(lines) + "\n"

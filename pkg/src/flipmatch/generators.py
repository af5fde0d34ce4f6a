"""Seeded point-set generators.

Every generator is deterministic in its arguments. Coordinates are integers
well inside ``COORD_BOUND``; each result is certified in general position.
"""

from __future__ import annotations

import math
import random
from typing import Iterator

from .geometry import COORD_BOUND, GeneralPositionError, PointSet, is_convex_position, orient
from .matching import Matching

MAX_TRIES = 1000


class GenerationError(RuntimeError):
    pass


def _check_odd(n: int) -> None:
    if n < 1 or n % 2 != 1:
        raise ValueError(f"n must be a positive odd integer, got {n}")


def convex_points(n: int, seed: int = 0, radius: int = 10_000) -> PointSet:
    """``n`` integer points in convex position: a jittered regular polygon."""
    _check_odd(n)
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        step = 2 * math.pi / n
        pts = []
        for i in range(n):
            a = i * step + rng.uniform(-0.25, 0.25) * step
            pts.append((round(radius * math.cos(a)), round(radius * math.sin(a))))
        try:
            ps = PointSet(pts)
        except GeneralPositionError:
            continue
        if n < 3 or is_convex_position(ps):
            return ps
    raise GenerationError(f"no convex {n}-gon after {MAX_TRIES} tries")


def random_points(n: int, seed: int = 0, box: int = 1000) -> PointSet:
    """``n`` uniform integer points in ``[0, box]^2``, rejection-sampled into general position."""
    _check_odd(n)
    rng = random.Random(seed)
    pts: list[tuple[int, int]] = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > MAX_TRIES * n:
            raise GenerationError(f"rejection sampling gave up after {tries} tries")
        p = (rng.randint(0, box), rng.randint(0, box))
        if p in pts or any(orient(a, b, p) == 0 for i, a in enumerate(pts) for b in pts[i + 1:]):
            continue
        pts.append(p)
    return PointSet(pts)


def _pinwheel(
    blades: int, r_in: float, ratio: float, span: float, theta0: float, center=(0, 0)
) -> list[tuple[int, int]]:
    # blade i runs from angle theta_i at radius r_in to theta_i + span at
    # radius r_in * ratio; with span > 360 / blades consecutive blades overlap
    # angularly and the next blade's inner end hides inside this blade's
    # triangle with the centre
    pts = []
    for i in range(blades):
        t = math.radians(theta0 + 360 * i / blades)
        t2 = t + math.radians(span)
        pts.append((round(center[0] + r_in * math.cos(t)), round(center[1] + r_in * math.sin(t))))
        pts.append((round(center[0] + ratio * r_in * math.cos(t2)), round(center[1] + ratio * r_in * math.sin(t2))))
    return pts


def nested_points(layers: int, r0: int = 100, ratio: float = 3.0, scale: float = 4.0) -> tuple[PointSet, Matching]:
    """Concentric three-blade pinwheel walls around a central unmatched point.

    Point 0 is the centre; layer ``j`` contributes points ``1 + 6j .. 6 + 6j``
    paired blade by blade. Each wall hides everything beyond it from the
    inside, so the unmatched point moves out at most one layer per flip.
    Returns the point set and the layered start matching.
    """
    if layers < 1:
        raise ValueError("need at least one layer")
    if r0 * ratio * scale ** (layers - 1) > COORD_BOUND // 2:
        raise ValueError("too many layers for the coordinate bound")
    pts = [(0, 0)]
    edges = []
    for j in range(layers):
        ring = _pinwheel(3, r0 * scale**j, ratio, 130, 90 + 37 * (j + 1))
        base = len(pts)
        pts.extend(ring)
        edges.extend((base + 2 * i, base + 2 * i + 1) for i in range(3))
    ps = PointSet(pts)
    return ps, Matching(ps, edges, 0)


def windmill_points(blades: int = 3, span: float = 130, ratio: float = 3.0, extra: int = 0) -> tuple[PointSet, Matching]:
    """One pinwheel around a central unmatched point, optionally ringed by ``extra`` outer points.

    ``extra`` must be even; the outer points are matched along a far ring.
    """
    if extra % 2:
        raise ValueError("extra must be even")
    pts = [(0, 0)] + _pinwheel(blades, 100, ratio, span, 97)
    edges = [(1 + 2 * i, 2 + 2 * i) for i in range(blades)]
    far = 100 * ratio * 4
    for i in range(extra):
        a = math.radians(53 + 360 * i / max(extra, 4) + 7 * i)
        pts.append((round(far * math.cos(a)), round(far * math.sin(a))))
    base = 1 + 2 * blades
    edges.extend((base + i, base + i + 1) for i in range(0, extra, 2))
    ps = PointSet(pts)
    return ps, Matching(ps, edges, 0)


def windmill_family(max_n: int = 11) -> Iterator[PointSet]:
    """Nested and windmill configurations with at most ``max_n`` points, in a fixed order."""
    for span in (100, 115, 130):
        for extra in (0, 2, 4):
            if 7 + extra > max_n:
                continue
            try:
                yield windmill_points(3, span, 3.0, extra)[0]
            except ValueError:
                # rounding can break general position for some parameters
                continue
    if 7 <= max_n:
        yield nested_points(1)[0]


def convex_family(ns=(3, 5, 7, 9, 11), seeds=range(3)) -> Iterator[PointSet]:
    for n in ns:
        for s in seeds:
            yield convex_points(n, s)

import random

from flipmatch.geometry import PointSet, orient
from flipmatch.matching import apply_flip, canonical_matching, legal_flips


def random_point_set(n: int, rng: random.Random, box: int = 200) -> PointSet:
    pts: list[tuple[int, int]] = []
    while len(pts) < n:
        p = (rng.randint(0, box), rng.randint(0, box))
        if p in pts or any(orient(a, b, p) == 0 for i, a in enumerate(pts) for b in pts[i + 1:]):
            continue
        pts.append(p)
    return PointSet(pts)


def random_matching(ps: PointSet, rng: random.Random, steps: int = 30):
    """Random walk of legal flips from the canonical matching."""
    m = canonical_matching(ps)
    for _ in range(steps):
        m = apply_flip(m, rng.choice(legal_flips(m)))
    return m

"""Alternating paths in the union of a Hamiltonian cycle and a perfect matching.

Given a graph ``G = C u M`` (``C`` a Hamiltonian cycle, ``M`` a perfect
matching), a matching edge ``e = ab`` and a vertex ``c != a``, an alternating
path starting ``a, b`` and ending at ``c`` always exists. ``find_alternating_path``
constructs one:

1. Contract matching edges lying on ``C`` (other than ``e`` and the matching
   edge at ``c``) into single cycle edges.
2. Grow a chain ``G_2 = {e}, G_3, ...`` whose non-end vertices each carry one
   matching and one non-matching cycle edge, until ``c`` joins.
3. Read the ``a``-``c`` path off the final chain and undo the contractions.

Edges on the cycle that join mates count as matching edges, never as
non-matching ones; a path therefore only uses cycle edges between non-mates
with the ``CYCLE`` label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence


class Label(Enum):
    MATCHING = "M"
    CYCLE = "C"


class AltPathError(RuntimeError):
    """Internal invariant broken; indicates a bug, not bad input."""


@dataclass(frozen=True)
class AltGraph:
    cycle_order: tuple[int, ...]
    matching_pairs: tuple[tuple[int, int], ...]

    def __init__(self, cycle_order: Iterable[int], matching_pairs: Iterable[Sequence[int]]):
        object.__setattr__(self, "cycle_order", tuple(cycle_order))
        object.__setattr__(self, "matching_pairs", tuple((int(u), int(v)) for u, v in matching_pairs))
        self._validate()

    def _validate(self) -> None:
        verts = set(self.cycle_order)
        if len(verts) != len(self.cycle_order):
            raise ValueError("cycle_order repeats a vertex")
        if len(verts) % 2:
            raise ValueError("a perfect matching needs an even vertex count")
        covered: set[int] = set()
        for u, v in self.matching_pairs:
            if u == v or u in covered or v in covered:
                raise ValueError(f"matching pair ({u}, {v}) overlaps another pair")
            covered.update((u, v))
        if covered != verts:
            raise ValueError("matching does not cover exactly the cycle vertices")

    @property
    def vertex_count(self) -> int:
        return len(self.cycle_order)

    @cached_property
    def mate(self) -> dict[int, int]:
        out = {}
        for u, v in self.matching_pairs:
            out[u] = v
            out[v] = u
        return out

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.cycle_order)}

    def cycle_neighbors(self, v: int) -> tuple[int, int]:
        i = self.position[v]
        n = len(self.cycle_order)
        return self.cycle_order[i - 1], self.cycle_order[(i + 1) % n]

    def is_cycle_edge(self, u: int, v: int) -> bool:
        return v in self.cycle_neighbors(u)

    def matching_on_cycle(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.matching_pairs if self.is_cycle_edge(u, v)]


@dataclass(frozen=True)
class AltPath:
    vertices: tuple[int, ...]
    labels: tuple[Label, ...]

    def edges(self) -> list[tuple[int, int, Label]]:
        return [(self.vertices[i], self.vertices[i + 1], lab) for i, lab in enumerate(self.labels)]


def path_problem(g: AltGraph, path: AltPath) -> str | None:
    """Describe the first way ``path`` fails to be an alternating path in ``g``."""
    vs, labels = path.vertices, path.labels
    if len(labels) != len(vs) - 1 or not labels:
        return "label count does not match vertex count"
    if len(set(vs)) != len(vs):
        return "repeated vertex"
    for i, (u, v, lab) in enumerate(path.edges()):
        expected = Label.MATCHING if i % 2 == 0 else Label.CYCLE
        if lab is not expected:
            return f"edge {i} has label {lab.name}, expected {expected.name}"
        if lab is Label.MATCHING and g.mate.get(u) != v:
            return f"edge {u}-{v} is not a matching edge"
        if lab is Label.CYCLE and (not g.is_cycle_edge(u, v) or g.mate[u] == v):
            return f"edge {u}-{v} is not a non-matching cycle edge"
    return None


@dataclass(frozen=True)
class Contraction:
    u0: int
    u1: int
    u2: int
    u3: int


@dataclass
class ContractionRecord:
    history: list[Contraction] = field(default_factory=list)

    def replay(self, g: AltGraph) -> AltGraph:
        for c in self.history:
            g = contract_once(g, c)
        return g


def contract_once(g: AltGraph, c: Contraction) -> AltGraph:
    """Remove matching edge u1u2 lying on cycle path u0-u1-u2-u3, joining u0 to u3."""
    if g.mate.get(c.u1) != c.u2:
        raise ValueError(f"{c.u1}-{c.u2} is not a matching edge")
    cyc = g.cycle_order
    i = g.position[c.u1]
    n = len(cyc)
    if cyc[(i + 1) % n] == c.u2:
        step = 1
    elif cyc[i - 1] == c.u2:
        step = -1
    else:
        raise ValueError(f"{c.u1}-{c.u2} does not lie on the cycle")
    if cyc[(i - step) % n] != c.u0 or cyc[(i + 2 * step) % n] != c.u3:
        raise ValueError("u0/u3 are not the cycle neighbours of the contracted edge")
    keep = [v for v in cyc if v not in (c.u1, c.u2)]
    pairs = [p for p in g.matching_pairs if c.u1 not in p]
    return AltGraph(keep, pairs)


class _Reduced:
    """Cycle with stable edge ids, so contracted edges can be expanded later.

    ``edge_ids[j]`` joins ``cycle[j]`` to ``cycle[j + 1]``; an id of a
    contracted edge maps to ``(u0, u1, u2, u3, left_id, right_id)``.
    """

    def __init__(self, g: AltGraph):
        self.cycle = list(g.cycle_order)
        self.edge_ids = list(range(len(self.cycle)))
        self.mate = dict(g.mate)
        self.expansion: dict[int, tuple[int, int, int, int, int, int]] = {}
        self._next_id = len(self.cycle)

    def contract_at(self, j: int) -> Contraction:
        # rotate so the contracted edge is cycle[1]-cycle[2]
        r = (j - 1) % len(self.cycle)
        cyc = self.cycle[r:] + self.cycle[:r]
        eids = self.edge_ids[r:] + self.edge_ids[:r]
        u0, u1, u2, u3 = cyc[:4]
        new = self._next_id
        self._next_id += 1
        self.expansion[new] = (u0, u1, u2, u3, eids[0], eids[2])
        self.cycle = [u0] + cyc[3:]
        self.edge_ids = [new] + eids[3:]
        del self.mate[u1], self.mate[u2]
        return Contraction(u0, u1, u2, u3)

    def as_graph(self) -> AltGraph:
        pairs = sorted({(min(u, v), max(u, v)) for u, v in self.mate.items()})
        return AltGraph(self.cycle, pairs)

    def expand(self, eid: int, x: int, y: int) -> list[int]:
        """Vertices of edge ``eid`` in the original graph, walked from x to y."""
        rec = self.expansion.get(eid)
        if rec is None:
            return [x, y]
        u0, u1, u2, u3, left, right = rec
        forward = self.expand(left, u0, u1) + self.expand(right, u2, u3)
        if (x, y) == (u0, u3):
            return forward
        if (x, y) == (u3, u0):
            return forward[::-1]
        raise AltPathError(f"edge {eid} does not join {x} and {y}")


def _reduce(g: AltGraph, e: tuple[int, int], c: int) -> tuple[_Reduced, ContractionRecord]:
    a, b = e
    red = _Reduced(g)
    record = ContractionRecord()
    while True:
        n = len(red.cycle)
        for j in range(n):
            u, v = red.cycle[j], red.cycle[(j + 1) % n]
            if red.mate[u] != v or {u, v} == {a, b} or c in (u, v):
                continue
            record.history.append(red.contract_at(j))
            break
        else:
            return red, record


def _check_pre(g: AltGraph, e: tuple[int, int], c: int) -> None:
    a, b = e
    if g.mate.get(a) != b:
        raise ValueError(f"({a}, {b}) is not a matching edge")
    if c == a:
        raise ValueError("target c must differ from a")
    if c not in g.position:
        raise ValueError(f"unknown vertex {c}")


def contract_reduce(g: AltGraph, e: tuple[int, int], c: int) -> tuple[AltGraph, ContractionRecord]:
    """Contract every matching edge on the cycle except ``e`` and the one at ``c``."""
    _check_pre(g, e, c)
    red, record = _reduce(g, e, c)
    return red.as_graph(), record


@dataclass
class Stage:
    """Intermediate chain ``G_k``: vertices in insertion order and labelled edges."""

    order: list[int]
    edges: dict[tuple, tuple[int, int, Label]]

    def incident(self, v: int) -> list[tuple[tuple, int, Label]]:
        out = []
        for key, (x, y, lab) in self.edges.items():
            if x == v:
                out.append((key, y, lab))
            elif y == v:
                out.append((key, x, lab))
        return out


def check_stage_invariants(stage: Stage, k: int, a: int, b: int) -> int | None:
    """Index (1-4) of the first violated chain property, or None."""
    verts = set(stage.order)
    touched = {v for x, y, _ in stage.edges.values() for v in (x, y)}
    if len(stage.order) != k or len(verts) != k or touched != verts:
        return 1
    vk = stage.order[-1]
    ends = sorted(v for v in verts if len(stage.incident(v)) == 1)
    if ends != sorted({a, vk}) or a == vk:
        return 2
    for v in verts - {a, vk}:
        labels = sorted(lab.value for _, _, lab in stage.incident(v))
        if labels != ["C", "M"]:
            return 3
    if stage.order[0] != a or stage.order[1] != b:
        return 4
    return None


def find_alternating_path(g: AltGraph, e: tuple[int, int], c: int, trace: list | None = None) -> AltPath:
    """Alternating path starting with vertex ``a`` and edge ``e = (a, b)``, ending at ``c``.

    If ``trace`` is a list, a snapshot of each intermediate chain is appended.
    """
    _check_pre(g, e, c)
    a, b = e
    if c == b:
        return AltPath((a, b), (Label.MATCHING,))

    red, _ = _reduce(g, e, c)
    pos = {v: i for i, v in enumerate(red.cycle)}
    n = len(red.cycle)

    stage = Stage([a, b], {("M", min(a, b), max(a, b)): (a, b, Label.MATCHING)})
    in_stage = {a, b}
    if trace is not None:
        trace.append(Stage(list(stage.order), dict(stage.edges)))

    while c not in in_stage:
        if len(stage.order) >= g.vertex_count:
            raise AltPathError("chain did not reach c within vertex_count stages")
        vk = stage.order[-1]
        (last_key, _, last_label), = stage.incident(vk)
        if last_label is Label.CYCLE:
            w = red.mate[vk]
            if w in in_stage:
                raise AltPathError(f"mate {w} of {vk} already in chain")
            stage.edges[("M", min(vk, w), max(vk, w))] = (vk, w, Label.MATCHING)
        else:
            # walk the cycle from vk towards c on the side avoiding a; the
            # matching edge at c cannot occur on this walk because c's mate
            # joins the chain only together with c
            i = pos[vk]
            step = 1
            j = i
            while True:
                j = (j + 1) % n
                if red.cycle[j] == c:
                    break
                if red.cycle[j] == a:
                    step = -1
                    break
            j = i
            while True:
                if step == 1:
                    eid, nxt = red.edge_ids[j], (j + 1) % n
                else:
                    nxt = (j - 1) % n
                    eid = red.edge_ids[nxt]
                x, y = red.cycle[j], red.cycle[nxt]
                if red.mate[x] == y:
                    raise AltPathError(f"walk hit matching edge {x}-{y} on the cycle")
                key = ("C", eid)
                if key in stage.edges:
                    del stage.edges[key]
                else:
                    stage.edges[key] = (x, y, Label.CYCLE)
                j = nxt
                if y not in in_stage:
                    w = y
                    break
        stage.order.append(w)
        in_stage.add(w)
        if trace is not None:
            trace.append(Stage(list(stage.order), dict(stage.edges)))
        bad = check_stage_invariants(stage, len(stage.order), a, b)
        if bad is not None:
            raise AltPathError(f"chain property ({bad}) violated at k={len(stage.order)}")

    # walk the a..c component of the final chain
    verts = [a]
    keys: list[tuple] = []
    prev_key = None
    v = a
    while v != c:
        nxt = [(key, u, lab) for key, u, lab in stage.incident(v) if key != prev_key]
        if len(nxt) != 1:
            raise AltPathError(f"chain branches at {v}")
        prev_key, v, _ = nxt[0]
        keys.append(prev_key)
        verts.append(v)

    out_v = [a]
    out_l: list[Label] = []
    for key, x, y in zip(keys, verts, verts[1:]):
        if key[0] == "M":
            out_v.append(y)
            out_l.append(Label.MATCHING)
        else:
            seg = red.expand(key[1], x, y)
            for s in seg[1:]:
                out_l.append(Label.CYCLE if not out_l or out_l[-1] is Label.MATCHING else Label.MATCHING)
                out_v.append(s)
    path = AltPath(tuple(out_v), tuple(out_l))
    problem = path_problem(g, path)
    if problem is not None:
        raise AltPathError(f"constructed path is invalid: {problem}")
    return path


BRUTE_FORCE_LIMIT = 16


def brute_force_alt_path(g: AltGraph, e: tuple[int, int], c: int) -> AltPath | None:
    """Exhaustive DFS over alternating paths from ``a`` via ``e``; first one ending at ``c``."""
    if g.vertex_count > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices")
    _check_pre(g, e, c)
    a, b = e
    mate = g.mate

    def dfs(path: list[int]) -> list[int] | None:
        v = path[-1]
        if v == c:
            return path
        need_matching = len(path) % 2 == 1
        options = [mate[v]] if need_matching else [u for u in g.cycle_neighbors(v) if mate[v] != u]
        for u in options:
            if u in path:
                continue
            found = dfs(path + [u])
            if found:
                return found
        return None

    found = dfs([a, b])
    if found is None:
        return None
    labels = tuple(Label.MATCHING if i % 2 == 0 else Label.CYCLE for i in range(len(found) - 1))
    return AltPath(tuple(found), labels)

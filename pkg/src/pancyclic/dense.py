"""Constructive edge-pancyclicity for dense graphs.

A graph of order N with minimum degree at least (N+2)/2 has a cycle of
every length 3..N through every edge.  The engine here produces those
cycles: seed a triangle on the edge, then grow one vertex at a time by
direct insertion, falling back to a Pósa rotation and finally to a bounded
search.  Cycles are lists ``[u, v, ...]`` whose first two entries are the
protected edge.
"""

from __future__ import annotations

import logging
from collections import Counter
from functools import lru_cache
from itertools import permutations

from .errors import (
    BipartiteNoTriangle,
    BudgetExhausted,
    ExtensionFailed,
    InvalidInput,
    LengthOutOfRange,
    PreconditionViolated,
)
from .graphs import ComplementNonTrivial, CycleWitness, Explicit, GraphSpec

log = logging.getLogger(__name__)


class DenseGraph:
    """An explicit snapshot checked against the minimum-degree threshold.

    ``k33`` marks the complement of Γ_3 (which is K_{3,3}); it is below the
    threshold and only even cycles exist, served from a table.
    """

    def __init__(self, graph: Explicit, *, k33: bool = False, strict: bool = True):
        self.graph = graph
        self.N = graph.n
        self.adj = graph.adj
        self.min_degree = graph.degree()
        self.k33 = k33
        self.stats: Counter = Counter()
        if strict and not k33 and 2 * self.min_degree < self.N + 2:
            raise PreconditionViolated(
                f"minimum degree {self.min_degree} below (N+2)/2 for N={self.N}"
            )

    @property
    def margin(self) -> float:
        return self.min_degree - (self.N + 2) / 2


def _gap_key(i: int, L: int) -> tuple[int, int]:
    # gap i joins cycle[i] and cycle[i+1]; gap 0 is the protected edge
    return (min(i - 1, L - 1 - i), i)


def _check_edge(g: DenseGraph, e) -> tuple[int, int]:
    u, v = e
    if not (0 <= u < g.N and 0 <= v < g.N) or v not in g.adj[u]:
        raise InvalidInput(f"({u}, {v}) is not an edge")
    return u, v


def triangle_through_edge(g: DenseGraph, e) -> list[int]:
    u, v = _check_edge(g, e)
    common = g.adj[u] & g.adj[v]
    if not common:
        raise BipartiteNoTriangle(f"no common neighbour of {u} and {v}")
    return [u, v, min(common)]


def _normalize(cycle: list[int], a: int, b: int) -> list[int]:
    """Rotate/reflect so the cycle reads ``[a, b, ...]``."""
    i = cycle.index(a)
    out = cycle[i:] + cycle[:i]
    if out[1] != b:
        out = [out[0]] + out[1:][::-1]
    return out


def _insert(g: DenseGraph, cycle: list[int]) -> list[int] | None:
    L = len(cycle)
    pos = {x: i for i, x in enumerate(cycle)}
    adj = g.adj
    for x in range(g.N):
        if x in pos:
            continue
        hits = {pos[y] for y in adj[x] if y in pos}
        if len(hits) < 2:
            continue
        gaps = [i for i in hits if i != 0 and (i + 1) % L in hits]
        if gaps:
            i = min(gaps, key=lambda j: _gap_key(j, L))
            return cycle[: i + 1] + [x] + cycle[i + 1 :]
    return None


def _rotate(g: DenseGraph, cycle: list[int]) -> list[int] | None:
    """Open the cycle at a gap, extend the path, rotate until it closes."""
    L = len(cycle)
    adj = g.adj
    a, b = cycle[0], cycle[1]
    on = set(cycle)

    def protected(x: int, y: int) -> bool:
        return (x == a and y == b) or (x == b and y == a)

    for i in sorted(range(1, L), key=lambda j: _gap_key(j, L)):
        path = cycle[i + 1 :] + cycle[: i + 1]
        for p in (path, path[::-1]):
            for x in sorted(adj[p[-1]] - on):
                q = p + [x]
                ax = adj[x]
                for j in range(len(q) - 2):
                    if q[j] in ax and q[j + 1] in adj[q[0]] and not protected(q[j], q[j + 1]):
                        return _normalize(q[: j + 1] + q[j + 1 :][::-1], a, b)
    return None


def search_cycle(adj, u: int, v: int, length: int, budget: int) -> list[int] | None:
    """Depth-first search for a cycle ``[u, v, ...]`` of exactly ``length`` vertices.

    Returns None when the search space is exhausted; raises
    :class:`BudgetExhausted` after ``budget`` node expansions.
    """
    path = [u, v]
    on = {u, v}
    steps = 0

    def dfs() -> bool:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExhausted(f"search budget {budget} exhausted")
        last = path[-1]
        if len(path) == length:
            return u in adj[last]
        for w in sorted(adj[last] - on):
            if len(path) == length - 1 and u not in adj[w]:
                continue
            path.append(w)
            on.add(w)
            if dfs():
                return True
            path.pop()
            on.discard(w)
        return False

    return list(path) if dfs() else None


def extend_by_one(g: DenseGraph, cycle: list[int], budget: int | None = None) -> list[int]:
    """Return a cycle one vertex longer that still starts with ``cycle[0], cycle[1]``."""
    L = len(cycle)
    if L >= g.N:
        raise LengthOutOfRange(f"cycle already spans all {g.N} vertices")
    out = _insert(g, cycle)
    if out is not None:
        g.stats["insert"] += 1
        return out
    out = _rotate(g, cycle)
    if out is not None:
        g.stats["rotate"] += 1
        return out
    g.stats["search"] += 1
    log.warning("dense engine fell back to search at length %d of %d", L + 1, g.N)
    try:
        out = search_cycle(g.adj, cycle[0], cycle[1], L + 1, budget or g.N * g.N * 64)
    except BudgetExhausted as exc:
        raise ExtensionFailed(str(exc)) from exc
    if out is None:
        raise ExtensionFailed(f"no cycle of length {L + 1} through ({cycle[0]}, {cycle[1]})")
    return out


def cycle_sequence(g: DenseGraph, e, max_len: int | None = None) -> list[list[int]]:
    """Cycles through ``e`` of lengths 3, 4, ..., ``max_len`` (default N)."""
    if g.k33:
        raise InvalidInput("K33 case has only even cycles; use even_cycle_k33")
    top = g.N if max_len is None else max_len
    if not 3 <= top <= g.N:
        raise LengthOutOfRange(f"length {top} outside [3, {g.N}]")
    cyc = triangle_through_edge(g, e)
    out = [cyc]
    while len(cyc) < top:
        cyc = extend_by_one(g, cyc)
        out.append(cyc)
    return out


def cycle_through_edge(g: DenseGraph, e, length: int) -> CycleWitness:
    u, v = _check_edge(g, e)
    if not 3 <= length <= g.N:
        raise LengthOutOfRange(f"length {length} outside [3, {g.N}]")
    if g.k33:
        if length % 2:
            raise LengthOutOfRange("K33 has no odd cycles")
        index = {p: i for i, p in enumerate(_k33_vertices())}
        verts = even_cycle_k33((_k33_vertices()[u], _k33_vertices()[v]), length).vertices
        return CycleWitness(g.graph, tuple(index[p] for p in verts), (u, v))
    return CycleWitness(g.graph, tuple(cycle_sequence(g, (u, v), length)[-1]), (u, v))


@lru_cache(maxsize=None)
def _k33_vertices() -> tuple:
    return tuple(permutations(range(3)))


@lru_cache(maxsize=None)
def _k33_table() -> dict:
    spec = ComplementNonTrivial(3)
    verts = _k33_vertices()
    table = {}
    for u in verts:
        for v in verts:
            if not spec.adjacent(u, v):
                continue
            for length in (4, 6):
                found = None
                for rest in permutations([w for w in verts if w not in (u, v)], length - 2):
                    cyc = (u, v) + rest
                    if all(spec.adjacent(cyc[i], cyc[(i + 1) % length]) for i in range(length)):
                        found = cyc
                        break
                table[u, v, length] = found
    return table


def even_cycle_k33(e, length: int) -> CycleWitness:
    """Even cycle through an edge of the complement of Γ_3 (a K_{3,3})."""
    spec = ComplementNonTrivial(3)
    u, v = (tuple(x) for x in e)
    if length % 2 or length not in (4, 6):
        raise LengthOutOfRange(f"K33 has cycles of length 4 and 6 only, not {length}")
    if not (spec.is_vertex(u) and spec.is_vertex(v)) or not spec.adjacent(u, v):
        raise InvalidInput(f"{e!r} is not an edge of {spec.label}")
    return CycleWitness(spec, _k33_table()[u, v, length], (u, v))


def dense_from_spec(spec: GraphSpec, strict: bool = True) -> tuple[DenseGraph, list]:
    graph, verts = Explicit.snapshot(spec)
    k33 = isinstance(spec, ComplementNonTrivial) and spec.m == 3
    return DenseGraph(graph, k33=k33, strict=strict), verts

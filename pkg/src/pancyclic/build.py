"""One entry point for every supported graph family."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from . import arrangement, gamma, gammak
from .dense import DenseGraph, cycle_through_edge, dense_from_spec
from .errors import InvalidInput
from .graphs import (
    Arrangement,
    ComplementNonTrivial,
    CycleWitness,
    Derangement,
    Explicit,
    FixedK,
    GraphSpec,
    GTilde1,
)


def max_length(spec: GraphSpec) -> int:
    """Longest cycle length the constructor can be asked for."""
    if isinstance(spec, FixedK):
        return gammak.max_length(spec.n, spec.k)
    return spec.order()


def check_supported(spec: GraphSpec) -> None:
    if isinstance(spec, Derangement) and spec.n < 4:
        raise InvalidInput("gamma:n needs n >= 4")
    if isinstance(spec, FixedK) and (spec.n < 4 or spec.n < 2 * spec.k + 1):
        raise InvalidInput("gammak:n:k needs n >= 4 and n >= 2k+1")
    if isinstance(spec, Arrangement) and not 4 <= spec.k <= spec.n:
        raise InvalidInput("arr:n:k needs n >= k >= 4")


@lru_cache(maxsize=16)
def _dense(spec: GraphSpec):
    g, verts = dense_from_spec(spec)
    return g, verts, {v: i for i, v in enumerate(verts)}


def construct(spec: GraphSpec, u, v, length: int, stats: Counter | None = None) -> CycleWitness:
    """A cycle of ``length`` vertices through the edge ``(u, v)`` of ``spec``."""
    check_supported(spec)
    if not spec.is_adjacent(u, v):
        raise InvalidInput(f"{spec.format_vertex(u)} and {spec.format_vertex(v)} are not adjacent")
    if isinstance(spec, Derangement):
        return gamma.construct(u, v, length)
    if isinstance(spec, FixedK):
        return gammak.construct(u, v, length, spec.k, stats)
    if isinstance(spec, Arrangement):
        return arrangement.construct(u, v, length, spec.n, stats)
    if isinstance(spec, (ComplementNonTrivial, GTilde1)):
        g, verts, index = _dense(spec)
        w = cycle_through_edge(g, (index[u], index[v]), length)
        return CycleWitness(spec, tuple(verts[i] for i in w.vertices), (u, v))
    if isinstance(spec, Explicit):
        return cycle_through_edge(DenseGraph(spec), (u, v), length)
    raise InvalidInput(f"no constructor for {spec.label}")

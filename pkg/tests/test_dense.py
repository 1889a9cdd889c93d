import random

import pytest

from pancyclic.dense import (
    DenseGraph,
    cycle_sequence,
    cycle_through_edge,
    dense_from_spec,
    even_cycle_k33,
    search_cycle,
    triangle_through_edge,
)
from pancyclic.errors import BipartiteNoTriangle, BudgetExhausted, LengthOutOfRange, PreconditionViolated
from pancyclic.graphs import ComplementNonTrivial, Explicit
from pancyclic.oracle import validate_cycle


def random_dense(N: int, rng: random.Random) -> Explicit:
    """Random graph with minimum degree at least (N+2)/2."""
    need = -(-(N + 2) // 2)
    adj = [set() for _ in range(N)]
    p = rng.uniform(0.55, 0.9)
    for u in range(N):
        for v in range(u + 1, N):
            if rng.random() < p:
                adj[u].add(v)
                adj[v].add(u)
    for u in range(N):
        others = [v for v in range(N) if v != u and v not in adj[u]]
        rng.shuffle(others)
        while len(adj[u]) < need:
            v = others.pop()
            adj[u].add(v)
            adj[v].add(u)
    return Explicit(N, tuple(frozenset(s) for s in adj))


@pytest.mark.parametrize("seed", range(25))
def test_random_dense_graphs_every_edge_every_length(seed):
    rng = random.Random(seed)
    G = random_dense(rng.randint(8, 24), rng)
    g = DenseGraph(G)
    for e in G.edges():
        for cyc in cycle_sequence(g, e):
            assert validate_cycle(G, cyc, e, len(cyc)) is None
            assert cyc[:2] == list(e)


def test_sparse_graph_is_refused():
    cyc = Explicit.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    with pytest.raises(PreconditionViolated):
        DenseGraph(cyc)


def test_triangle_needs_common_neighbour():
    g = DenseGraph(Explicit.from_edges(2, [(0, 1)]), strict=False)
    with pytest.raises(BipartiteNoTriangle):
        triangle_through_edge(g, (0, 1))


def test_complement_of_gamma4_is_dense_enough():
    g, verts = dense_from_spec(ComplementNonTrivial(4))
    assert g.min_degree == 14 and g.margin == 1.0
    w = cycle_through_edge(g, (0, sorted(g.adj[0])[0]), 24)
    assert validate_cycle(g.graph, w, w.target, 24) is None


@pytest.mark.parametrize("length", [4, 6])
def test_k33_even_cycles(length):
    spec = ComplementNonTrivial(3)
    for u in spec.vertices():
        for v in spec.neighbors(u):
            w = even_cycle_k33((u, v), length)
            assert validate_cycle(spec, w, (u, v), length) is None


def test_k33_has_no_odd_cycles():
    with pytest.raises(LengthOutOfRange):
        even_cycle_k33(((0, 1, 2), (0, 2, 1)), 5)


def test_search_cycle_budget_and_exhaustion():
    G = Explicit.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert search_cycle(G.adj, 0, 1, 4, 100) == [0, 1, 2, 3]
    assert search_cycle(G.adj, 0, 1, 3, 100) is None
    big = random_dense(20, random.Random(1))
    with pytest.raises(BudgetExhausted):
        search_cycle(big.adj, 0, sorted(big.adj[0])[0], 20, 3)

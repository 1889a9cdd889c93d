"""Cycles through every edge of G_n^k, k-arrangements that differ in every position.

Fix a pivot value v.  Arrangements containing v form H1; the rest form H2,
a copy of G_{n-1}^k after renaming values.  Inside H1, the position shifts
by a k-cycle σ split the vertices into cliques of size k, one per
arrangement with v in the last place, and the graph of those cliques is
dense, so the same quotient-and-lift pipeline as for Γ_n applies.  Longer
cycles splice an H2 cycle, found recursively, into an H1 cycle.

When n == k the graph is Γ_k and the permutation constructor is used.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Sequence

from . import gamma
from .errors import InvalidInput, LengthOutOfRange, StitchFailed
from .gamma import QuotientCache, plan, stitch, two_coset_cycle
from .graphs import Arrangement, CycleWitness, GTilde1
from .perm import (
    Perm,
    cyclic_permutations,
    delta,
    disagree,
    falling,
    powers,
    shift,
    transposition,
)

Tup = tuple[int, ...]


def h1_size(n: int, k: int) -> int:
    return k * falling(n - 1, k - 1)


def _canonical_shift(k: int) -> Perm:
    return tuple((p + 1) % k for p in range(k))


def third_vertex(n: int, a: Tup, b: Tup, must: int | None = None) -> Tup | None:
    """Smallest arrangement disagreeing everywhere with ``a`` and ``b``,
    containing ``must`` if given (backtracking)."""
    k = len(a)
    out: list[int] = []
    used: set[int] = set()

    def go(p: int) -> bool:
        if p == k:
            return must is None or must in used
        left = k - p
        for x in range(n):
            if x in used or x == a[p] or x == b[p]:
                continue
            if must is not None and must not in used and x != must and left == 1:
                continue
            out.append(x)
            used.add(x)
            if go(p + 1):
                return True
            out.pop()
            used.discard(x)
        return False

    return tuple(out) if go(0) else None


class H1Frame:
    """Coordinates in which the pivot is value n-1 and α has it in the last place."""

    def __init__(self, n: int, k: int, v: int, c: int, sigma: Perm):
        self.n, self.k = n, k
        self.gamma = transposition(n, v, n - 1)
        self.rho = transposition(k, c, k - 1)
        self.sigma = sigma
        r = self.rho
        fs = tuple(r[sigma[r[p]]] for p in range(k))
        self.pows = powers(fs)

    def into(self, x: Sequence[int]) -> Tup:
        g, r = self.gamma, self.rho
        return tuple(g[x[r[p]]] for p in range(self.k))

    back = into  # both relabelings are involutions

    def coset(self, x: Tup) -> list[Tup]:
        return [shift(x, s) for s in self.pows]


def select_h1(alpha: Tup, beta: Tup, v: int) -> tuple[Perm, int] | None:
    """A k-cycle σ on positions and i0 with β∘σ^{i0} carrying v where α does,
    and the two cliques adjacent in the quotient."""
    k = len(alpha)
    c, d = alpha.index(v), beta.index(v)
    same = set(alpha) == set(beta)
    for sigma in cyclic_permutations(k):
        pows = powers(sigma)
        for i in range(1, k):
            if pows[i][c] != d:
                continue
            b0 = shift(beta, pows[i])
            if b0 == alpha:
                break
            if same and delta(alpha, b0) < 2:
                break
            return sigma, i
    return None


@lru_cache(maxsize=None)
def _gtilde_cache(n: int, k: int) -> QuotientCache:
    return QuotientCache(GTilde1(n, k))


def gtilde_cycle(a_hat: Tup, b_hat: Tup, n: int, k: int, q: int) -> list[Tup]:
    """Cycle ``[a_hat, b_hat, ...]`` of length ``q`` in the quotient on (k-1)-arrangements of [n-1]."""
    spec = GTilde1(n, k)
    if not spec.adjacent(a_hat, b_hat):
        raise InvalidInput(f"{a_hat}, {b_hat} not adjacent in {spec.label}")
    if not 3 <= q <= spec.order():
        raise LengthOutOfRange(f"quotient length {q} outside [3, {spec.order()}]")
    g = a_hat + tuple(x for x in range(n - 1) if x not in a_hat)
    ginv = [0] * (n - 1)
    for i, x in enumerate(g):
        ginv[x] = i
    w = tuple(ginv[x] for x in b_hat)
    canon = _gtilde_cache(n, k).cycle(tuple(range(k - 1)), w, q)
    return [tuple(g[x] for x in t) for t in canon]


def h1_cycle(alpha: Tup, beta: Tup, length: int, v: int, n: int) -> list[Tup]:
    """Cycle ``[α, β, ...]`` among arrangements containing ``v``."""
    k = len(alpha)
    if v not in alpha or v not in beta:
        raise InvalidInput(f"both endpoints must contain {v}")
    size = h1_size(n, k)
    if not 3 <= length <= size:
        raise LengthOutOfRange(f"length {length} outside [3, {size}]")
    if length == 3:
        z = third_vertex(n, alpha, beta, must=v)
        if z is None:
            raise StitchFailed("no triangle in H1")
        return [alpha, beta, z]
    got = select_h1(alpha, beta, v)
    if got is None:
        raise StitchFailed(f"no clique structure for {alpha}, {beta}")
    sigma, i0 = got
    fr = H1Frame(n, k, v, alpha.index(v), sigma)
    fa, fb = fr.into(alpha), fr.into(beta)
    fb0 = shift(fb, fr.pows[i0])
    if length <= 5:
        fa0 = shift(fa, fr.pows[i0])
        verts = two_coset_cycle(fa, fb, fb0, fa0, fr.coset(fa), fr.coset(fb0), length)
    else:
        p = plan(length, k, falling(n - 1, k - 1))
        quotient = gtilde_cycle(fa[:-1], fb0[:-1], n, k, p.q)
        taus = [t + (n - 1,) for t in quotient]
        verts = stitch(taus, [fr.coset(t) for t in taus], p.j, fb)
    return [fr.back(x) for x in verts]


def _drop(v: int):
    def down(x: Tup) -> Tup:
        return tuple(u - (u > v) for u in x)

    def up(x: Tup) -> Tup:
        return tuple(u + (u >= v) for u in x)

    return down, up


def h2_cycle(x: Tup, y: Tup, length: int, v: int, n: int, stats: Counter) -> list[Tup]:
    """Cycle ``[x, y, ...]`` among arrangements avoiding ``v``; length 2 means the edge."""
    if length == 2:
        return [x, y]
    down, up = _drop(v)
    return [up(t) for t in cycle(down(x), down(y), length, n - 1, stats)]


def _as_path(cyc: list[Tup]) -> list[Tup]:
    """The cycle ``[x, y, ...]`` with edge xy removed, read as a path from x to y."""
    return [cyc[0]] + cyc[2:][::-1] + [cyc[1]]


def _splice_pair(c1: list[Tup], v: int, n: int, stats: Counter):
    """Gap i of c1 and arrangements x ~ c1[i], y ~ c1[i+1] avoiding v with x ~ y."""
    k = len(c1[0])
    L = len(c1)
    s_pows = powers(_canonical_shift(k))
    for i in range(1, L):
        a, b = c1[i], c1[(i + 1) % L]
        for w in range(n):
            if w in a or w in b:
                continue
            at = tuple(w if u == v else u for u in a)
            bt = tuple(w if u == v else u for u in b)
            for s in s_pows[1:]:
                x, y = shift(at, s), shift(bt, s)
                if disagree(a, x) and disagree(b, y):
                    stats["swap_bridge"] += 1
                    return i, x, y
    stats["search_bridge"] += 1
    others = [u for u in range(n) if u != v]
    from itertools import permutations

    for i in range(1, L):
        a, b = c1[i], c1[(i + 1) % L]
        for x in permutations(others, k):
            if not disagree(a, x):
                continue
            for y in permutations(others, k):
                if disagree(b, y) and disagree(x, y):
                    return i, x, y
    raise StitchFailed("no bridge between the two halves")


def _split_lengths(length: int, first_max: int) -> tuple[int, int]:
    l1 = min(first_max, length - 2)
    return l1, length - l1


def cycle(alpha: Sequence[int], beta: Sequence[int], length: int, n: int,
          stats: Counter | None = None) -> list[Tup]:
    """Vertex list ``[α, β, ...]`` of a ``length``-cycle in G_n^k."""
    alpha, beta = tuple(alpha), tuple(beta)
    stats = stats if stats is not None else Counter()
    k = len(alpha)
    spec = Arrangement(n, k)
    if k < 4 or n < k:
        raise InvalidInput(f"needs n >= k >= 4, got n={n}, k={k}")
    if not (spec.is_vertex(alpha) and spec.is_vertex(beta)) or len(beta) != k:
        raise InvalidInput(f"endpoints must be {k}-arrangements of [{n}]")
    if not spec.adjacent(alpha, beta):
        raise InvalidInput(f"{alpha} and {beta} are not adjacent")
    if not 3 <= length <= spec.order():
        raise LengthOutOfRange(f"length {length} outside [3, {spec.order()}]")
    if n == k:
        return gamma.cycle(alpha, beta, length)

    size1 = h1_size(n, k)
    if set(alpha) == set(beta):
        v = min(alpha)
        if length <= size1:
            return h1_cycle(alpha, beta, length, v, n)
        l1 = size1 if length - size1 >= 2 else size1 - 1
        c1 = h1_cycle(alpha, beta, l1, v, n)
        i, x, y = _splice_pair(c1, v, n, stats)
        c2 = h2_cycle(x, y, length - l1, v, n, stats)
        stats["merge_same_set"] += 1
        return c1[: i + 1] + _as_path(c2) + c1[i + 1 :]

    v = min(set(alpha) - set(beta))
    if length == 3:
        z = third_vertex(n, alpha, beta)
        if z is None:
            raise StitchFailed("no triangle")
        return [alpha, beta, z]
    s = _canonical_shift(k)
    a1, b1 = shift(alpha, s), shift(beta, s)
    l1, l2 = _split_lengths(length, size1)
    c1 = [alpha, a1] if l1 == 2 else h1_cycle(alpha, a1, l1, v, n)
    c2 = h2_cycle(beta, b1, l2, v, n, stats)
    stats["merge_diff_set"] += 1
    # α, β, (H2 path) β∘s, α∘s, (H1 path) back to α
    return [alpha] + _as_path(c2) + c1[1:]


def construct(alpha: Sequence[int], beta: Sequence[int], length: int, n: int,
              stats: Counter | None = None) -> CycleWitness:
    verts = cycle(alpha, beta, length, n, stats)
    return CycleWitness(Arrangement(n, len(verts[0])), tuple(verts), (tuple(alpha), tuple(beta)))

"""Cycles through every edge of Γ_n^k (neighbours agree in exactly k positions).

After moving the k agreement positions of the edge to the end, the
permutations split into blocks by their last k entries; inside a block the
graph is Γ_{n-k} on the prefix.  A cycle is grown block by block: an edge
(a, b) of the current cycle is replaced by a path a, x', ..., y', b through
a fresh block, where x' and y' are adjacent and agree with a and b in
exactly k positions.  Blocks are visited following an ordering of the
k-arrangements in which consecutive tuples disagree everywhere and share at
least k-1 entries.

When n - k = 3 a block is Γ_3, two disjoint triangles; each triangle is
then its own unit.
"""

from __future__ import annotations

import logging
from collections import Counter
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Sequence

from . import gamma
from .errors import InvalidInput, LengthOutOfRange, StitchFailed
from .graphs import CycleWitness, FixedK
from .perm import (
    Perm,
    delta,
    derangements_avoiding,
    disagree,
    inverse,
    is_permutation,
    parity,
    shift,
)

log = logging.getLogger(__name__)


def _gray(elems: tuple[int, ...], k: int) -> list[tuple[int, ...]]:
    """k-subsets of ``elems`` from its first k to its last k, one swap per step."""
    m = len(elems)
    if k == 0:
        return [()]
    if k == m:
        return [elems]
    if k == 1:
        return [(e,) for e in elems]
    out: list[tuple[int, ...]] = []
    for j in range(m - k + 1):
        block = [(elems[j],) + rest for rest in _gray(elems[j + 1 :], k - 1)]
        out.extend(block if j % 2 == 0 else block[::-1])
    return out


def subset_gray_order(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of range(n) (sorted tuples) with consecutive intersections
    of size k-1, from ``{0..k-1}`` to ``{n-k..n-1}``."""
    if not 1 <= k < n:
        raise InvalidInput(f"need 1 <= k < n, got n={n}, k={k}")
    return _gray(tuple(range(n)), k)


def check_gray_order(order: Sequence[Sequence[int]], n: int, k: int) -> list[str]:
    problems = []
    sets = [frozenset(s) for s in order]
    if len(set(sets)) != len(sets):
        problems.append("repeated subset")
    from math import comb

    if len(sets) != comb(n, k) or any(len(s) != k or not s <= set(range(n)) for s in sets):
        problems.append("does not cover every k-subset")
    for i in range(len(sets) - 1):
        if len(sets[i] & sets[i + 1]) != k - 1:
            problems.append(f"step {i} changes more than one element")
    if sets and (sets[0] != frozenset(range(k)) or sets[-1] != frozenset(range(n - k, n))):
        problems.append("wrong endpoints")
    return problems


def check_eta_order(order: Sequence[Sequence[int]], n: int, k: int) -> list[str]:
    """Violations of: exact cover of the k-arrangements, consecutive tuples
    disagreeing everywhere and sharing at least k-1 entries."""
    problems = []
    tuples = [tuple(t) for t in order]
    expected = set(permutations(range(n), k))
    if len(tuples) != len(expected) or set(tuples) != expected:
        problems.append("not an exact cover of the k-arrangements")
    for i in range(len(tuples) - 1):
        a, b = tuples[i], tuples[i + 1]
        if not disagree(a, b):
            problems.append(f"step {i}: tuples agree somewhere")
        if len(set(a) & set(b)) < k - 1:
            problems.append(f"step {i}: share fewer than k-1 entries")
    return problems


def _within(cur: Perm) -> list[Perm]:
    """Hamiltonian path over the arrangements of ``set(cur)`` starting at ``cur``,
    consecutive tuples disagreeing everywhere (k = 1, 2 or k >= 4)."""
    k = len(cur)
    if k == 1:
        return [cur]
    if k == 2:
        return [cur, (cur[1], cur[0])]
    vals = sorted(cur)
    rank = {v: i for i, v in enumerate(vals)}
    p = tuple(rank[v] for v in cur)
    nb = next(derangements_avoiding(p))
    return [tuple(vals[i] for i in x) for x in gamma.cycle(p, nb, factorial(k))]


def _eta_by_blocks(n: int, k: int) -> list[Perm]:
    subsets = subset_gray_order(n, k)
    step = tuple((p + 1) % k for p in range(k))
    cur: Perm = tuple(range(k))
    out: list[Perm] = []
    for idx, sub in enumerate(subsets):
        seg = _within(cur)
        out.extend(seg)
        if idx + 1 < len(subsets):
            a = (set(sub) - set(subsets[idx + 1])).pop()
            b = (set(subsets[idx + 1]) - set(sub)).pop()
            last = seg[-1]
            tilde = tuple(b if x == a else x for x in last)
            cur = shift(tilde, step)
    return out


def _eta_by_search(n: int, k: int) -> list[Perm]:
    """Hamiltonian path from ``(0..k-1)`` by depth-first search with Warnsdorff ordering."""
    verts = list(permutations(range(n), k))
    index = {v: i for i, v in enumerate(verts)}
    sets = [frozenset(v) for v in verts]
    nbrs = [
        [index[w] for w in derangements_avoiding(v, range(n)) if len(sets[i] & set(w)) >= k - 1]
        for i, v in enumerate(verts)
    ]
    total = len(verts)
    seen = [False] * total
    path = [0]
    seen[0] = True
    budget = [200 * total]

    def free(i: int) -> int:
        return sum(1 for j in nbrs[i] if not seen[j])

    def dfs() -> bool:
        if len(path) == total:
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return False
        cands = sorted((j for j in nbrs[path[-1]] if not seen[j]), key=lambda j: (free(j), j))
        for j in cands:
            seen[j] = True
            path.append(j)
            if dfs():
                return True
            path.pop()
            seen[j] = False
        return False

    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, total + 1000))
    try:
        found = dfs()
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        raise StitchFailed(f"no arrangement ordering found for n={n}, k={k}")
    return [verts[i] for i in path]


@lru_cache(maxsize=32)
def _canonical_eta(n: int, k: int) -> tuple[Perm, ...]:
    if k != 3:
        order = _eta_by_blocks(n, k)
        if not check_eta_order(order, n, k):
            return tuple(order)
    # Γ_3 is two triangles, so no single-subset segment exists for k = 3
    log.info("arrangement ordering for n=%d, k=%d built by search", n, k)
    return tuple(_eta_by_search(n, k))


def eta_order(n: int, k: int, start: Sequence[int]) -> list[Perm]:
    """Order of all k-arrangements of range(n) starting at ``start``.

    Consecutive tuples disagree in every position and share at least k-1
    entries.  Built for start ``(0..k-1)`` and carried over by a value
    relabeling.
    """
    start = tuple(start)
    if not (len(start) == k and len(set(start)) == k and all(0 <= x < n for x in start)):
        raise InvalidInput(f"start {start} is not a {k}-arrangement of [{n}]")
    if k < 1 or n < 2 * k + 1:
        raise InvalidInput(f"ordering needs k >= 1 and n >= 2k+1, got n={n}, k={k}")
    rest = [v for v in range(n) if v not in start]
    g = start + tuple(rest)
    return [tuple(g[x] for x in t) for t in _canonical_eta(n, k)]


class _Frame:
    """Γ_n^k with the agreement positions of the target edge moved last."""

    def __init__(self, n: int, k: int, agree: Sequence[int]):
        self.n, self.k, self.m = n, k, n - k
        rest = [i for i in range(n) if i not in agree]
        self.rho = tuple(rest) + tuple(agree)
        self.rho_inv = inverse(self.rho)

    def into(self, x: Perm) -> Perm:
        return shift(x, self.rho)

    def back(self, x: Perm) -> Perm:
        return shift(x, self.rho_inv)

    def unit(self, x: Perm) -> tuple:
        tail = x[self.m :]
        return (tail, parity(x[: self.m])) if self.m == 3 else (tail,)

    @property
    def unit_size(self) -> int:
        return 3 if self.m == 3 else factorial(self.m)

    def members(self, key: tuple) -> list[Perm]:
        return _members(self.n, key)

    def unit_cycle(self, x: Perm, y: Perm, p: int) -> list[Perm]:
        m = self.m
        tail = x[m:]
        if m == 3:
            if p != 3:
                raise StitchFailed(f"triangle unit asked for a {p}-cycle")
            z = next(v for v in self.members(self.unit(x)) if v not in (x, y))
            return [x, y, z]
        vals = sorted(x[:m])
        rank = {v: i for i, v in enumerate(vals)}
        small = gamma.cycle(tuple(rank[v] for v in x[:m]), tuple(rank[v] for v in y[:m]), p)
        return [tuple(vals[i] for i in s) + tail for s in small]

    def unit_path(self, x: Perm, y: Perm, p: int) -> list[Perm]:
        if p == 2:
            return [x, y]
        c = self.unit_cycle(x, y, p)
        return [c[0]] + c[2:][::-1] + [c[1]]


@lru_cache(maxsize=4096)
def _members(n: int, key: tuple) -> list[Perm]:
    tail = key[0]
    vals = sorted(set(range(n)) - set(tail))
    out = [p + tail for p in permutations(vals)]
    if len(key) == 2:
        out = [x for x in out if parity(x[: n - len(tail)]) == key[1]]
    return out


def _cyclic_on(positions: list[int], m: int) -> list[int]:
    pi = list(range(m))
    for i, r in enumerate(positions):
        pi[r] = positions[(i + 1) % len(positions)]
    return pi


def block_bridge(a: Perm, b: Perm, target_tail: Perm, k: int) -> tuple[Perm, Perm] | None:
    """Bridge the edge (a, b) of one block into the block ending ``target_tail``.

    Same entry set: permute prefix positions by π with exactly k fixed
    points (impossible when n = 2k+1).  Sets sharing k-1 entries: swap the
    entering value in, then apply π fixing k positions that avoid the swap
    (or π = id when n = 2k+1).  Returns None when no such π exists.
    """
    n = len(a)
    m = n - k
    tail_a = set(a[m:])
    tail_t = set(target_tail)
    if a[m:] != b[m:]:
        return None
    if tail_a == tail_t:
        if m - k == 1:
            return None
        pi = _cyclic_on(list(range(k, m)), m)
        return (tuple(a[i] for i in pi[:m]) + tuple(target_tail),
                tuple(b[i] for i in pi[:m]) + tuple(target_tail))
    if len(tail_a & tail_t) != k - 1:
        return None
    (out_v,) = tail_a - tail_t
    (in_v,) = tail_t - tail_a
    pa, pb = a.index(in_v), b.index(in_v)
    at = [out_v if v == in_v else v for v in a[:m]]
    bt = [out_v if v == in_v else v for v in b[:m]]
    if n - 2 * k == 1:
        pi = list(range(m))
    else:
        fixed = [p for p in range(m) if p not in (pa, pb)][:k]
        pi = _cyclic_on([p for p in range(m) if p not in fixed], m)
    return (tuple(at[i] for i in pi) + tuple(target_tail),
            tuple(bt[i] for i in pi) + tuple(target_tail))


def _gap_order(L: int, recent: range) -> list[int]:
    first = [i for i in recent if 1 <= i < L]
    seen = set(first)
    return first + [i for i in range(1, L) if i not in seen]


def _find_bridge(fr: _Frame, cyc: list, used: set, units: list, recent: range, stats: Counter):
    k = fr.k
    L = len(cyc)
    gaps = _gap_order(L, recent)
    # the block construction, from an edge of the latest path into the next block
    nxt = next((u for u in units if u not in used), None)
    if nxt is not None:
        for i in gaps[: max(1, len(recent))]:
            a, b = cyc[i], cyc[(i + 1) % L]
            got = block_bridge(a, b, nxt[0], k)
            if got is None:
                if a[fr.m :] == b[fr.m :] and set(a[fr.m :]) == set(nxt[0]) and fr.m - k == 1:
                    stats["same_set_fallback"] += 1
                continue
            x, y = got
            if (fr.unit(x) not in used and delta(a, x) == k and delta(b, y) == k
                    and disagree(x[: fr.m], y[: fr.m])):
                stats["block_bridge"] += 1
                return i, x, y
    stats["search_bridge"] += 1
    for key in units:
        if key in used:
            continue
        mem = fr.members(key)
        for i in gaps:
            a, b = cyc[i], cyc[(i + 1) % L]
            xs = [x for x in mem if delta(a, x) == k]
            if not xs:
                continue
            ys = [y for y in mem if delta(b, y) == k]
            for x in xs:
                for y in ys:
                    if disagree(x[: fr.m], y[: fr.m]):
                        return i, x, y
    return None


def _units_in_order(fr: _Frame, start_tail: Perm) -> list[tuple]:
    out = []
    for t in eta_order(fr.n, fr.k, start_tail):
        out.extend([(t, 0), (t, 1)] if fr.m == 3 else [(t,)])
    return out


def max_length(n: int, k: int) -> int:
    """Longest cycle that can exist in Γ_n^k.

    Two permutations agreeing in exactly k places differ by a derangement of
    the other n-k places.  For n-k = 3 that derangement is a 3-cycle, which
    is even, so the graph has two components of n!/2 vertices each.
    """
    return factorial(n) // 2 if n - k == 3 else factorial(n)


def cycle(alpha: Sequence[int], beta: Sequence[int], length: int, k: int,
          stats: Counter | None = None) -> list[Perm]:
    alpha, beta = tuple(alpha), tuple(beta)
    n = len(alpha)
    stats = stats if stats is not None else Counter()
    if len(beta) != n or not (is_permutation(alpha) and is_permutation(beta)):
        raise InvalidInput("endpoints must be permutations of the same size")
    if n < 4 or n < 2 * k + 1:
        raise InvalidInput(f"needs n >= 4 and n >= 2k+1, got n={n}, k={k}")
    if delta(alpha, beta) != k:
        raise InvalidInput(f"{alpha} and {beta} do not agree in exactly {k} positions")
    if not 3 <= length <= factorial(n):
        raise LengthOutOfRange(f"length {length} outside [3, {factorial(n)}]")
    if k == 0:
        return gamma.cycle(alpha, beta, length)
    top = max_length(n, k)
    if length > top:
        raise LengthOutOfRange(
            f"length {length} exceeds {top}: for n-k = 3 every edge is an even "
            f"permutation step, so the graph splits into two parity classes"
        )

    fr = _Frame(n, k, [i for i in range(n) if alpha[i] == beta[i]])
    fa, fb = fr.into(alpha), fr.into(beta)
    size = fr.unit_size
    units = _units_in_order(fr, fa[fr.m :])
    used = {fr.unit(fa)}

    if length <= size:
        cyc = fr.unit_cycle(fa, fb, length)
    elif length == 4:
        # unit is a triangle: a 4-cycle is the bridge square on (α, β) itself
        got = _find_bridge(fr, [fa, fb], used, units, range(0), stats)
        if got is None:
            raise StitchFailed("no 4-cycle bridge")
        _, x, y = got
        cyc = [fa, fb, x, y]
    else:
        first = size if length - size != 1 else size - 1
        cyc = fr.unit_cycle(fa, fb, first)
        recent = range(1, first)
        while len(cyc) < length:
            r = length - len(cyc)
            p = min(size, r)
            if r - p == 1:
                p -= 1
            got = _find_bridge(fr, cyc, used, units, recent, stats)
            if got is None:
                raise StitchFailed(f"no bridge out of a {len(cyc)}-cycle")
            i, x, y = got
            path = fr.unit_path(x, y, p)
            used.add(fr.unit(x))
            cyc = cyc[: i + 1] + path + cyc[i + 1 :]
            recent = range(i + 1, i + p)
    return [fr.back(x) for x in cyc]


def construct(alpha: Sequence[int], beta: Sequence[int], length: int, k: int,
              stats: Counter | None = None) -> CycleWitness:
    verts = cycle(alpha, beta, length, k, stats)
    return CycleWitness(FixedK(len(alpha), k), tuple(verts), (tuple(alpha), tuple(beta)))

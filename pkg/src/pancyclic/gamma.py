"""Cycles of every length through every edge of the derangement graph Γ_n.

Pipeline for an edge (α, β) and target length ℓ:

* pick an n-cycle σ whose powers avoid αβ⁻¹, and a shift i₀ with
  β₀ = σ^{i₀}β agreeing with α in at least two positions;
* relabel so α and β₀ both fix the last point; the permutations fixing it
  index disjoint σ-orbits, each a clique K_n;
* find a cycle through (α̂, β̂₀) in the complement of Γ_{n-1} and lift it,
  crossing between consecutive orbits on disagreeing pairs and walking
  1..n-1 steps inside each orbit.

Lengths 3-5 come from pairwise-disjoint rows of a Latin rectangle
extending α and β; for n = 4, lengths 5-7 use the two orbits of α and β₀.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import chain
from math import factorial
from typing import Callable, Sequence

from .dense import DenseGraph, cycle_sequence, dense_from_spec, even_cycle_k33, extend_by_one
from .errors import InvalidInput, LengthOutOfRange, StitchFailed
from .graphs import ComplementNonTrivial, CycleWitness, Derangement
from .perm import (
    Perm,
    compose,
    cyclic_permutations,
    delta,
    disagree,
    identity,
    inverse,
    is_permutation,
    powers,
    transposition,
)


@dataclass(frozen=True)
class LengthPlan:
    """``q`` orbits on the quotient cycle; orbit ``s`` is walked for ``j[s]`` steps."""

    q: int
    j: tuple[int, ...]

    @property
    def total(self) -> int:
        return self.q + sum(self.j)


def plan(length: int, clique: int, max_q: int, allowed: Sequence[int] | None = None) -> LengthPlan:
    """Split ``length`` into ``q`` orbit visits of ``1..clique-1`` steps each."""
    if allowed is None:
        q = max(3, -(-length // clique))
    else:
        fits = [q for q in sorted(allowed) if 2 * q <= length <= q * clique]
        if not fits:
            raise LengthOutOfRange(f"length {length} not reachable with q in {sorted(allowed)}")
        q = fits[0]
    if q > max_q or not 2 * q <= length <= q * clique:
        raise LengthOutOfRange(f"length {length} not reachable (clique {clique}, q <= {max_q})")
    extra = length - 2 * q
    base, rem = divmod(extra, q)
    return LengthPlan(q, tuple(1 + base + (1 if s < rem else 0) for s in range(q)))


def plan_length(length: int, n: int) -> LengthPlan:
    if not 6 <= length <= factorial(n):
        raise LengthOutOfRange(f"length {length} outside [6, {factorial(n)}]")
    return plan(length, n, factorial(n - 1))


@dataclass(frozen=True)
class NormalizedEdge:
    """An edge moved into the frame where α and β₀ fix the last point.

    Frame vertices are ``gamma∘x∘rho``; both relabelings are involutions.
    """

    alpha: Perm
    beta: Perm
    beta0: Perm
    sigma: Perm
    shift: int
    gamma: Perm
    rho: Perm

    def to_frame(self, x: Sequence[int]) -> Perm:
        g, r = self.gamma, self.rho
        return tuple([g[x[i]] for i in r])

    def from_frame(self, x: Sequence[int]) -> Perm:
        gi, ri = inverse(self.gamma), inverse(self.rho)
        return tuple([gi[x[i]] for i in ri])


@lru_cache(maxsize=64)
def _cyclic_list(n: int) -> tuple[tuple[Perm, tuple[Perm, ...]], ...]:
    # first-fit only ever looks at a handful; keep the first few dozen
    out = []
    for s in cyclic_permutations(n):
        out.append((s, tuple(powers(s))))
        if len(out) >= 2 * n:
            break
    return tuple(out)


def select_sigma_and_shift(alpha: Perm, beta: Perm) -> tuple[Perm, int]:
    """First n-cycle σ (lex order) with αβ⁻¹ not a power of σ, and the least
    shift i₀ ≥ 1 with ``delta(α, σ^{i₀}β) >= 2``."""
    n = len(alpha)
    ab = compose(alpha, inverse(beta))
    candidates = chain(_cyclic_list(n), ((s, powers(s)) for s in cyclic_permutations(n)))
    for sigma, pows in candidates:
        if ab in pows[1:]:
            continue
        for i in range(1, n):
            if delta(alpha, compose(pows[i], beta)) >= 2:
                return sigma, i
    raise StitchFailed(f"no admissible cyclic permutation for {alpha}, {beta}")


def normalize(alpha: Perm, beta: Perm, sigma: Perm, shift: int) -> NormalizedEdge:
    """Relabel values (d n) and positions (c n) so α(n) = β₀(n) = n."""
    n = len(alpha)
    beta0 = compose(powers(sigma)[shift], beta)
    agree = [c for c in range(n) if alpha[c] == beta0[c]]
    if not agree:
        raise StitchFailed("α and β₀ share no position")
    c = n - 1 if n - 1 in agree else agree[-1]
    d = alpha[c]
    gamma = transposition(n, d, n - 1)
    rho = transposition(n, c, n - 1)
    return NormalizedEdge(alpha, beta, beta0, sigma, shift, gamma, rho)


class QuotientCache:
    """Cycles through the canonical edge (id, w) of a vertex-transitive quotient.

    The quotient graphs here are invariant under left multiplication, so a
    cycle through (u, v) is ``u`` times a cycle through (id, u⁻¹v).  Cycles
    are grown lazily and kept per ``w``.
    """

    def __init__(self, spec):
        self.spec = spec
        self.graph: DenseGraph | None = None
        self.verts: list = []
        self.index: dict = {}
        self.seqs: dict = {}

    def _ensure(self) -> None:
        if self.graph is None:
            self.graph, self.verts = dense_from_spec(self.spec)
            self.index = {v: i for i, v in enumerate(self.verts)}

    def cycle(self, base, w, length: int) -> list:
        """Vertex list of a ``length``-cycle through (base, base*w), base-multiplied."""
        self._ensure()
        g = self.graph
        seq = self.seqs.get(w)
        root = self.index[base]
        if seq is None:
            seq = cycle_sequence(g, (root, self.index[w]), 3)
            self.seqs[w] = seq
        while len(seq) < length - 2:
            seq.append(extend_by_one(g, seq[-1]))
        return [self.verts[i] for i in seq[length - 3]]


@lru_cache(maxsize=None)
def _complement_cache(m: int) -> QuotientCache:
    return QuotientCache(ComplementNonTrivial(m))


def quotient_cycle(a_hat: Perm, b0_hat: Perm, q: int) -> list[Perm]:
    """Cycle ``[α̂, β̂₀, ...]`` of length ``q`` in the complement of Γ_{n-1}."""
    m = len(a_hat)
    if delta(a_hat, b0_hat) < 1 or a_hat == b0_hat:
        raise InvalidInput("quotient endpoints must be distinct and agree somewhere")
    w = compose(inverse(a_hat), b0_hat)
    if m == 3:
        if q not in (4, 6):
            raise LengthOutOfRange(f"complement of Γ_3 has even cycles 4 and 6 only, not {q}")
        canon = even_cycle_k33((identity(3), w), q).vertices
    else:
        if not 3 <= q <= factorial(m):
            raise LengthOutOfRange(f"quotient length {q} outside [3, {factorial(m)}]")
        canon = _complement_cache(m).cycle(identity(m), w, q)
    return [compose(a_hat, c) for c in canon]


def stitch(
    taus: Sequence[Perm],
    cosets: Sequence[Sequence[Perm]],
    js: Sequence[int],
    theta2: Perm,
    adjacent: Callable = disagree,
) -> list[Perm]:
    """Lift a quotient cycle: enter orbit ``s`` at θ_s, walk ``js[s]`` steps to τ_s.

    ``cosets[s][0]`` must be ``taus[s]``; θ_1 is forced to ``theta2``.
    """
    q = len(taus)
    thetas: list = [None] * q
    thetas[1] = theta2
    for s in range(q):
        if s == 1:
            continue
        prev = taus[s - 1]
        for m in cosets[s][1:]:
            if adjacent(prev, m):
                thetas[s] = m
                break
        else:
            raise StitchFailed(f"no entry vertex into orbit {s}")

    def inner(s: int) -> list:
        skip = (thetas[s], taus[s])
        return sorted(m for m in cosets[s] if m not in skip)[: js[s] - 1]

    out = [taus[0]]
    for s in range(1, q):
        out.append(thetas[s])
        out.extend(inner(s))
        out.append(taus[s])
    out.append(thetas[0])
    out.extend(inner(0))
    return out


def lift_and_stitch(quotient: Sequence[Perm], p: LengthPlan, ne: NormalizedEdge) -> list[Perm]:
    """Lift a quotient cycle into Γ_n; returns frame vertices starting ``[α, β]``."""
    n = len(ne.alpha)
    if len(quotient) != p.q:
        raise StitchFailed("plan and quotient disagree on q")
    pows = powers(_frame_sigma(ne))
    taus = [tuple(t) + (n - 1,) for t in quotient]
    cosets = [[tuple([g[x] for x in t]) for g in pows] for t in taus]
    return stitch(taus, cosets, p.j, ne.to_frame(ne.beta))


def _frame_sigma(ne: NormalizedEdge) -> Perm:
    g = ne.gamma
    return compose(compose(g, ne.sigma), inverse(g))


def _complete_matching(n: int, used: list[set[int]]) -> Perm:
    """A permutation avoiding ``used[i]`` at each position (Kuhn's augmenting paths)."""
    owner: list[int | None] = [None] * n

    def augment(pos: int, seen: set[int]) -> bool:
        for v in range(n):
            if v in used[pos] or v in seen:
                continue
            seen.add(v)
            if owner[v] is None or augment(owner[v], seen):
                owner[v] = pos
                return True
        return False

    for pos in range(n):
        if not augment(pos, set()):
            raise StitchFailed("Latin rectangle could not be extended")
    out = [0] * n
    for v, pos in enumerate(owner):
        out[pos] = v
    return tuple(out)


def disjoint_rows(rows: Sequence[Perm], count: int) -> list[Perm]:
    """``count`` permutations disagreeing everywhere with ``rows`` and each other.

    ``rows`` form a Latin rectangle; a proper r×n Latin rectangle with r < n
    always extends by one row, so this never fails while r + count <= n.
    """
    n = len(rows[0])
    if len(rows) + count > n:
        raise InvalidInput(f"cannot extend {len(rows)} rows by {count} in order {n}")
    used = [{r[i] for r in rows} for i in range(n)]
    out = []
    for _ in range(count):
        row = _complete_matching(n, used)
        for i, v in enumerate(row):
            used[i].add(v)
        out.append(row)
    return out


def two_coset_cycle(alpha, beta, beta0, alpha0, coset_a, coset_b, length: int) -> list:
    """α, β, …(orbit of β₀)…, β₀, α₀, …(orbit of α)…; lengths 4..2·|orbit|."""
    size = len(coset_a)
    if not 4 <= length <= 2 * size:
        raise LengthOutOfRange(f"two-orbit cycle length {length} outside [4, {2 * size}]")
    j2 = min(size - 1, length - 3)
    j1 = length - 2 - j2
    inner_b = sorted(m for m in coset_b if m not in (beta, beta0))[: j2 - 1]
    inner_a = sorted(m for m in coset_a if m not in (alpha, alpha0))[: j1 - 1]
    return [alpha, beta] + inner_b + [beta0, alpha0] + inner_a


def short_cycle(alpha: Perm, beta: Perm, length: int) -> list[Perm]:
    """Cycles of length 3-5 (3-7 for n = 4) through (α, β)."""
    n = len(alpha)
    if length in (3, 4) or (length == 5 and n >= 5):
        return [alpha, beta] + disjoint_rows([alpha, beta], length - 2)
    if n == 4 and 5 <= length <= 7:
        sigma, i0 = select_sigma_and_shift(alpha, beta)
        ne = normalize(alpha, beta, sigma, i0)
        pows = powers(_frame_sigma(ne))
        fa, fb, fb0 = ne.to_frame(alpha), ne.to_frame(beta), ne.to_frame(ne.beta0)
        fa0 = compose(pows[i0], fa)
        ca = [compose(g, fa) for g in pows]
        cb = [compose(g, fb0) for g in pows]
        return [ne.from_frame(x) for x in two_coset_cycle(fa, fb, fb0, fa0, ca, cb, length)]
    raise LengthOutOfRange(f"no short-cycle rule for length {length} at n={n}")


def _check_edge(alpha, beta) -> int:
    n = len(alpha)
    if len(beta) != n or not (is_permutation(alpha) and is_permutation(beta)):
        raise InvalidInput("endpoints must be permutations of the same size")
    if not disagree(alpha, beta):
        raise InvalidInput(f"{alpha} and {beta} are not adjacent in Γ_{n}")
    if n < 4:
        raise InvalidInput("edge-pancyclicity needs n >= 4")
    return n


def cycle(alpha: Sequence[int], beta: Sequence[int], length: int) -> list[Perm]:
    """Vertex list ``[α, β, ...]`` of a ``length``-cycle in Γ_n."""
    alpha, beta = tuple(alpha), tuple(beta)
    n = _check_edge(alpha, beta)
    if not 3 <= length <= factorial(n):
        raise LengthOutOfRange(f"length {length} outside [3, {factorial(n)}]")
    if length <= 5 or (n == 4 and length <= 7):
        return short_cycle(alpha, beta, length)
    sigma, i0 = select_sigma_and_shift(alpha, beta)
    ne = normalize(alpha, beta, sigma, i0)
    if n == 4:
        p = plan(length, 4, 6, allowed=(4, 6))
    else:
        p = plan_length(length, n)
    fa, fb0 = ne.to_frame(alpha), ne.to_frame(ne.beta0)
    quotient = quotient_cycle(fa[:-1], fb0[:-1], p.q)
    return [ne.from_frame(x) for x in lift_and_stitch(quotient, p, ne)]


def construct(alpha: Sequence[int], beta: Sequence[int], length: int) -> CycleWitness:
    verts = cycle(alpha, beta, length)
    return CycleWitness(Derangement(len(verts[0])), tuple(verts), (tuple(alpha), tuple(beta)))

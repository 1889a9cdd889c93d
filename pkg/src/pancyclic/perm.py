"""Permutations and arrangements as plain tuples.

Everything here is 0-based: a permutation of ``[n]`` is a tuple ``p`` of
length ``n`` with ``p[i]`` the image of ``i``.  An arrangement is a tuple of
``k`` distinct values drawn from ``range(n)``; the ambient ``n`` travels
separately.  Text formats (``"2 1 4 3"``) are 1-based.

Composition follows ``compose(p, q)[i] == p[q[i]]`` (apply ``q`` first), so a
left product ``s^i * t`` is ``compose(power(s, i), t)``.  Arrangements admit
two actions: the value action ``relabel(g, a)`` (``g`` after ``a``) and the
position action ``shift(a, s)`` (``a`` after ``s``).
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def is_arrangement(a: Sequence[int], n: int) -> bool:
    return len(set(a)) == len(a) <= n and all(0 <= x < n for x in a)


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return ``p∘q``."""
    if len(p) != len(q):
        raise ValueError(f"size mismatch: {len(p)} vs {len(q)}")
    return tuple([p[x] for x in q])


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def delta(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of positions where ``a`` and ``b`` agree."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(1 for x, y in zip(a, b) if x == y)


def fixed_point_count(p: Sequence[int]) -> int:
    return sum(1 for i, x in enumerate(p) if i == x)


def disagree(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when ``a`` and ``b`` differ in every position (``delta == 0``)."""
    for x, y in zip(a, b):
        if x == y:
            return False
    return True


def is_cyclic(p: Sequence[int]) -> bool:
    """True when ``p`` is a single cycle through all of ``range(len(p))``."""
    n = len(p)
    if n == 0:
        return False
    x, steps = p[0], 1
    while x != 0:
        x = p[x]
        steps += 1
    return steps == n


def cyclic_permutations(n: int) -> Iterator[Perm]:
    """All n-cycles, in lexicographic order of their one-line form."""
    for p in permutations(range(n)):
        if is_cyclic(p):
            yield p


def power(s: Sequence[int], i: int) -> Perm:
    n = len(s)
    i %= n if n else 1
    out = list(range(n))
    for _ in range(i):
        out = [s[x] for x in out]
    return tuple(out)


def powers(s: Sequence[int]) -> list[Perm]:
    """``[s^0, s^1, ..., s^(n-1)]``."""
    n = len(s)
    out = [identity(n)]
    for _ in range(n - 1):
        out.append(tuple([s[x] for x in out[-1]]))
    return out


def coset(tau: Sequence[int], sigma: Sequence[int]) -> list[Perm]:
    """Value-action orbit ``[tau, s tau, s^2 tau, ...]`` of length ``len(sigma)``."""
    return [tuple([g[x] for x in tau]) for g in powers(sigma)]


def shift(a: Sequence[int], s: Sequence[int]) -> Perm:
    """Position action: ``shift(a, s)[p] == a[s[p]]``."""
    return tuple([a[x] for x in s])


def position_coset(tau: Sequence[int], sigma: Sequence[int]) -> list[Perm]:
    """Position-action orbit ``[tau∘s^0, tau∘s^1, ...]``; ``sigma`` acts on ``range(len(tau))``."""
    return [tuple([tau[x] for x in g]) for g in powers(sigma)]


def relabel(gamma: Sequence[int], x: Sequence[int]) -> Perm:
    """Left multiplication ``gamma∘x``; a graph automorphism for every family here."""
    return tuple([gamma[v] for v in x])


def transposition(n: int, i: int, j: int) -> Perm:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def derangement_count(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    a, b = 1, 0  # D_0, D_1
    if n == 0:
        return a
    for m in range(2, n + 1):
        a, b = b, (m - 1) * (a + b)
    return b


def falling(n: int, k: int) -> int:
    """``n!/(n-k)!``, the number of k-arrangements of ``[n]``."""
    out = 1
    for x in range(n - k + 1, n + 1):
        out *= x
    return out


def derangements_avoiding(forbidden: Sequence[int], values: Sequence[int] | None = None) -> Iterator[Perm]:
    """Tuples ``t`` over ``values`` (distinct entries) with ``t[i] != forbidden[i]``.

    ``values`` defaults to ``range(len(forbidden))``; longer value pools yield
    arrangements.  Built by recursive placement, never by filtering.
    """
    k = len(forbidden)
    pool = sorted(values) if values is not None else list(range(k))
    used: set[int] = set()
    cur: list[int] = []

    def place(i: int) -> Iterator[Perm]:
        if i == k:
            yield tuple(cur)
            return
        bad = forbidden[i]
        for v in pool:
            if v != bad and v not in used:
                used.add(v)
                cur.append(v)
                yield from place(i + 1)
                cur.pop()
                used.discard(v)

    return place(0)


def parity(t: Sequence[int]) -> int:
    """Parity of the permutation sorting ``t`` (0 even, 1 odd)."""
    inv = 0
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                inv += 1
    return inv & 1


def parse(text: str) -> Perm:
    """Parse 1-based one-line notation, e.g. ``"2 1 4 3"``."""
    try:
        vals = [int(tok) - 1 for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ValueError(f"not a one-line tuple: {text!r}") from exc
    if not vals:
        raise ValueError("empty tuple")
    return tuple(vals)


def fmt(p: Sequence[int]) -> str:
    return " ".join(str(x + 1) for x in p)

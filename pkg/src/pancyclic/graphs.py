"""Implicit graph families on permutations and arrangements.

Each family is a frozen dataclass exposing an adjacency oracle; nothing
stores adjacency except :class:`Explicit`.  Vertices are 0-based tuples
(integers for :class:`Explicit`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb, factorial
from typing import Any, Iterator, Sequence

from .errors import InvalidInput
from .perm import (
    delta,
    derangement_count,
    derangements_avoiding,
    disagree,
    falling,
    fmt,
    parse,
)

Vertex = Any


class GraphSpec:
    """Common surface: ``order``, ``degree``, ``vertices``, ``is_adjacent``, ``neighbors``."""

    label: str

    def is_vertex(self, u: Vertex) -> bool:
        raise NotImplementedError

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        """Unchecked adjacency test on well-formed vertices."""
        raise NotImplementedError

    def is_adjacent(self, u: Vertex, v: Vertex) -> bool:
        for x in (u, v):
            if not self.is_vertex(x):
                raise InvalidInput(f"{x!r} is not a vertex of {self.label}")
        return self.adjacent(u, v)

    def vertices(self) -> Iterator[Vertex]:
        raise NotImplementedError

    def neighbors(self, u: Vertex) -> Iterator[Vertex]:
        return (v for v in self.vertices() if v != u and self.adjacent(u, v))

    def order(self) -> int:
        raise NotImplementedError

    def degree(self) -> int:
        raise NotImplementedError

    def format_vertex(self, u: Vertex) -> Any:
        return fmt(u)

    def parse_vertex(self, raw: Any) -> Vertex:
        u = parse(raw) if isinstance(raw, str) else tuple(int(x) - 1 for x in raw)
        if not self.is_vertex(u):
            raise InvalidInput(f"{raw!r} is not a vertex of {self.label}")
        return u

    def __str__(self) -> str:
        return self.label


def _is_perm(u: Any, n: int) -> bool:
    return isinstance(u, tuple) and len(u) == n and sorted(u) == list(range(n))


def _is_arr(u: Any, n: int, k: int) -> bool:
    return (
        isinstance(u, tuple)
        and len(u) == k
        and len(set(u)) == k
        and all(isinstance(x, int) and 0 <= x < n for x in u)
    )


@dataclass(frozen=True)
class Derangement(GraphSpec):
    """Γ_n: permutations adjacent when they differ in every position."""

    n: int

    @property
    def label(self) -> str:
        return f"gamma:{self.n}"

    def is_vertex(self, u):
        return _is_perm(u, self.n)

    def adjacent(self, u, v):
        return disagree(u, v)

    def vertices(self):
        return permutations(range(self.n))

    def neighbors(self, u):
        return derangements_avoiding(u)

    def order(self):
        return factorial(self.n)

    def degree(self):
        return derangement_count(self.n)


@dataclass(frozen=True)
class FixedK(GraphSpec):
    """Γ_n^k: permutations adjacent when they agree in exactly ``k`` positions."""

    n: int
    k: int

    @property
    def label(self) -> str:
        return f"gammak:{self.n}:{self.k}"

    def is_vertex(self, u):
        return _is_perm(u, self.n)

    def adjacent(self, u, v):
        return delta(u, v) == self.k

    def vertices(self):
        return permutations(range(self.n))

    def neighbors(self, u):
        n, k = self.n, self.k
        for keep in combinations(range(n), k):
            rest = [i for i in range(n) if i not in keep]
            pool = [u[i] for i in rest]
            for fill in derangements_avoiding(pool, pool):
                v = list(u)
                for i, x in zip(rest, fill):
                    v[i] = x
                yield tuple(v)

    def order(self):
        return factorial(self.n)

    def degree(self):
        return comb(self.n, self.k) * derangement_count(self.n - self.k)


def arrangement_degree(n: int, k: int) -> int:
    """k-arrangements of [n] avoiding a fixed arrangement coordinate-wise."""
    return sum((-1) ** j * comb(k, j) * falling(n - j, k - j) for j in range(k + 1))


@dataclass(frozen=True)
class Arrangement(GraphSpec):
    """G_n^k: k-arrangements of [n] adjacent when every coordinate differs."""

    n: int
    k: int

    @property
    def label(self) -> str:
        return f"arr:{self.n}:{self.k}"

    def is_vertex(self, u):
        return _is_arr(u, self.n, self.k)

    def adjacent(self, u, v):
        return u != v and disagree(u, v)

    def vertices(self):
        return permutations(range(self.n), self.k)

    def neighbors(self, u):
        return derangements_avoiding(u, range(self.n))

    def order(self):
        return falling(self.n, self.k)

    def degree(self):
        return arrangement_degree(self.n, self.k)


@dataclass(frozen=True)
class ComplementNonTrivial(GraphSpec):
    """Complement of Γ_m: distinct permutations agreeing somewhere."""

    m: int

    @property
    def label(self) -> str:
        return f"complement:{self.m}"

    def is_vertex(self, u):
        return _is_perm(u, self.m)

    def adjacent(self, u, v):
        return u != v and not disagree(u, v)

    def vertices(self):
        return permutations(range(self.m))

    def order(self):
        return factorial(self.m)

    def degree(self):
        return factorial(self.m) - 1 - derangement_count(self.m)


@dataclass(frozen=True)
class GTilde1(GraphSpec):
    """Quotient graph on (k-1)-arrangements of [n-1].

    Distinct tuples are adjacent when their entry sets differ or when they
    agree in at least one position.  Non-neighbours are exactly the
    same-set derangements, so the graph is ``P(n-1,k-1) - 1 - D_{k-1}``
    regular.
    """

    n: int
    k: int

    @property
    def label(self) -> str:
        return f"gtilde:{self.n}:{self.k}"

    def is_vertex(self, u):
        return _is_arr(u, self.n - 1, self.k - 1)

    def adjacent(self, u, v):
        if u == v:
            return False
        return set(u) != set(v) or not disagree(u, v)

    def vertices(self):
        return permutations(range(self.n - 1), self.k - 1)

    def order(self):
        return falling(self.n - 1, self.k - 1)

    def degree(self):
        return self.order() - 1 - derangement_count(self.k - 1)


@dataclass(frozen=True)
class Explicit(GraphSpec):
    """Graph on ``range(n)`` with stored adjacency."""

    n: int
    adj: tuple[frozenset[int], ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Explicit":
        nb: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise InvalidInput(f"bad edge ({u}, {v}) for n={n}")
            nb[u].add(v)
            nb[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nb))

    @classmethod
    def snapshot(cls, spec: GraphSpec) -> tuple["Explicit", list[Vertex]]:
        """Materialize ``spec``; returns the graph and the index-to-vertex list."""
        verts = list(spec.vertices())
        index = {v: i for i, v in enumerate(verts)}
        nb: list[set[int]] = [set() for _ in verts]
        for i, u in enumerate(verts):
            for w in spec.neighbors(u):
                nb[i].add(index[w])
        return cls(len(verts), tuple(frozenset(s) for s in nb)), verts

    @property
    def label(self) -> str:
        return f"explicit:{self.n}"

    def is_vertex(self, u):
        return isinstance(u, int) and 0 <= u < self.n

    def adjacent(self, u, v):
        return v in self.adj[u]

    def vertices(self):
        return iter(range(self.n))

    def neighbors(self, u):
        return iter(sorted(self.adj[u]))

    def order(self):
        return self.n

    def degree(self):
        return min((len(s) for s in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges()]})

    @classmethod
    def from_json(cls, text: str) -> "Explicit":
        data = json.loads(text)
        return cls.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])

    def format_vertex(self, u):
        return u

    def parse_vertex(self, raw):
        u = int(raw)
        if not self.is_vertex(u):
            raise InvalidInput(f"{raw!r} is not a vertex of {self.label}")
        return u


def parse_spec(text: str) -> GraphSpec:
    """Parse ``gamma:n``, ``gammak:n:k``, ``arr:n:k`` (plus ``complement:m``, ``gtilde:n:k``)."""
    parts = text.strip().split(":")
    try:
        kind, nums = parts[0], [int(x) for x in parts[1:]]
    except ValueError as exc:
        raise InvalidInput(f"bad spec {text!r}") from exc
    arity = {"gamma": 1, "gammak": 2, "arr": 2, "complement": 1, "gtilde": 2}
    if kind not in arity or len(nums) != arity[kind]:
        raise InvalidInput(f"bad spec {text!r}; expected gamma:n, gammak:n:k or arr:n:k")
    if any(x < 0 for x in nums) or nums[0] < 1:
        raise InvalidInput(f"bad spec {text!r}")
    if kind == "gamma":
        return Derangement(nums[0])
    if kind == "complement":
        return ComplementNonTrivial(nums[0])
    n, k = nums
    if k > n:
        raise InvalidInput(f"bad spec {text!r}: k > n")
    if kind == "gammak":
        return FixedK(n, k)
    if kind == "arr":
        return Arrangement(n, k)
    if k < 1:
        raise InvalidInput(f"bad spec {text!r}")
    return GTilde1(n, k)


@dataclass(frozen=True)
class CycleWitness:
    """A cycle certificate: ``vertices`` in cyclic order; ``target`` is the edge it certifies."""

    spec: GraphSpec
    vertices: tuple
    target: tuple | None = None

    def __len__(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        f = self.spec.format_vertex
        return {
            "spec": self.spec.label,
            "length": len(self.vertices),
            "vertices": [f(v) for v in self.vertices],
            "target_edge": None if self.target is None else [f(v) for v in self.target],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, spec: GraphSpec | None = None) -> "CycleWitness":
        spec = spec or parse_spec(data["spec"])
        verts = tuple(_lenient_vertex(spec, raw) for raw in data["vertices"])
        target = data.get("target_edge")
        if target is not None:
            target = tuple(_lenient_vertex(spec, raw) for raw in target)
        return cls(spec, verts, target)

    @classmethod
    def from_json(cls, text: str, spec: GraphSpec | None = None) -> "CycleWitness":
        return cls.from_dict(json.loads(text), spec)


def _lenient_vertex(spec: GraphSpec, raw: Any) -> Any:
    # Malformed vertices must survive loading so validation can name them.
    try:
        return spec.parse_vertex(raw)
    except (InvalidInput, ValueError, TypeError):
        if isinstance(raw, str):
            try:
                return parse(raw)
            except ValueError:
                return raw
        return raw


def parse_edge(spec: GraphSpec, text: str) -> tuple:
    """Parse ``"u|v"`` into a pair of vertices of ``spec``."""
    halves = text.split("|")
    if len(halves) != 2:
        raise InvalidInput(f"edge must look like 'u|v', got {text!r}")
    return spec.parse_vertex(halves[0]), spec.parse_vertex(halves[1])

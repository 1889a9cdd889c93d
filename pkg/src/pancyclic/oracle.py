"""Independent checking: witness validation, brute-force cycle search, sweeps.

Nothing here calls the constructors' internals.  ``validate_cycle`` reads
only the adjacency oracle of the graph family, and ``brute_force_cycle``
searches an explicit snapshot of the graph.
"""

from __future__ import annotations

import json
import os
import random
import statistics
import time
import zlib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .build import construct, max_length
from .errors import BudgetExhausted, PancyclicError
from .graphs import CycleWitness, Explicit, GraphSpec, parse_spec

KINDS = ("MalformedVertex", "WrongLength", "RepeatedVertex", "NonEdge", "MissingTargetEdge")


@dataclass(frozen=True)
class Violation:
    kind: str
    position: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        at = "" if self.position is None else f" at position {self.position}"
        return f"{self.kind}{at}: {self.detail}" if self.detail else f"{self.kind}{at}"


def validate_cycle(spec: GraphSpec, witness, required_edge=None, length: int | None = None) -> Violation | None:
    """None when ``witness`` is a cycle of ``spec`` of the given length through
    ``required_edge``; otherwise the first violation found.

    ``witness`` may be a :class:`CycleWitness` or a plain vertex sequence.
    """
    verts = list(witness.vertices if isinstance(witness, CycleWitness) else witness)
    for i, x in enumerate(verts):
        try:
            ok = spec.is_vertex(x)
        except TypeError:
            ok = False
        if not ok:
            return Violation("MalformedVertex", i, repr(x))
    L = len(verts)
    if (length is not None and L != length) or L < 3:
        want = length if length is not None else ">= 3"
        return Violation("WrongLength", None, f"got {L}, want {want}")
    seen: dict = {}
    for i, x in enumerate(verts):
        if x in seen:
            return Violation("RepeatedVertex", i, f"same as position {seen[x]}")
        seen[x] = i
    for i in range(L):
        if not spec.adjacent(verts[i], verts[(i + 1) % L]):
            return Violation("NonEdge", i, f"positions {i} and {(i + 1) % L}")
    if required_edge is not None:
        u, v = required_edge
        pairs = {(verts[i], verts[(i + 1) % L]) for i in range(L)}
        if (u, v) not in pairs and (v, u) not in pairs:
            return Violation("MissingTargetEdge")
    return None


@lru_cache(maxsize=8)
def _indexed(spec: GraphSpec):
    graph, verts = Explicit.snapshot(spec)
    masks = tuple(sum(1 << j for j in s) for s in graph.adj)
    return verts, {v: i for i, v in enumerate(verts)}, masks


def _reach(masks, start: int, allowed: int) -> int:
    """Bitset of vertices reachable from ``start`` through ``allowed``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def brute_force_cycle(spec: GraphSpec, edge, length: int, budget: int = 2_000_000) -> CycleWitness | None:
    """Depth-first search for a cycle of ``length`` through ``edge``.

    Returns None only when the search space was exhausted, which proves no
    such cycle exists; raises :class:`BudgetExhausted` otherwise.
    """
    verts, index, masks = _indexed(spec)
    u, v = (index[x] for x in edge)
    N = len(verts)
    if not masks[u] >> v & 1:
        return None
    if length < 3 or length > N:
        return None
    path = [u, v]
    free = ((1 << N) - 1) & ~(1 << u) & ~(1 << v)
    steps = 0

    def dfs(last: int, free: int) -> bool:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExhausted(f"brute force budget {budget} exhausted")
        need = length - len(path)
        if need == 0:
            return bool(masks[last] >> u & 1)
        # enough unvisited vertices must be reachable, and u must be among them
        region = _reach(masks, last, free | (1 << u))
        if not region >> u & 1 or bin(region & free).count("1") < need:
            return False
        cand = masks[last] & free
        if need == 1:
            cand &= masks[u]
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            path.append(w)
            if dfs(w, free & ~low):
                return True
            path.pop()
        return False

    if dfs(v, free):
        return CycleWitness(spec, tuple(verts[i] for i in path), tuple(edge))
    return None


def all_edges(spec: GraphSpec) -> list[tuple]:
    """Every undirected edge once, as ``(u, v)`` with ``u`` before ``v`` in vertex order."""
    verts, index, masks = _indexed(spec)
    return [(verts[i], verts[j]) for i in range(len(verts)) for j in range(i + 1, len(verts))
            if masks[i] >> j & 1]


def base_seed(seed: int | None = None) -> int:
    if seed is not None:
        return seed
    return int(os.environ.get("PANCYCLIC_SEED", "0"))


def task_seed(base: int, spec: GraphSpec, edge, length: int) -> int:
    key = f"{base}|{spec.label}|{spec.format_vertex(edge[0])}|{spec.format_vertex(edge[1])}|{length}"
    return zlib.crc32(key.encode())


def _percentiles(xs: Sequence[float]) -> dict:
    if not xs:
        return {}
    s = sorted(xs)

    def pick(q: float) -> float:
        return round(s[min(len(s) - 1, int(q * len(s)))], 4)

    return {"p50": pick(0.5), "p90": pick(0.9), "p99": pick(0.99), "max": round(s[-1], 4),
            "mean": round(statistics.fmean(s), 4)}


def _run_chunk(args) -> tuple[list, dict]:
    label, engine, pairs, lengths, budget = args
    spec = parse_spec(label)
    stats: Counter = Counter()
    rows = []
    for u, v in pairs:
        for L in lengths:
            t = time.perf_counter()
            reason = None
            try:
                if engine == "brute":
                    w = brute_force_cycle(spec, (u, v), L, budget)
                    if w is None:
                        reason = "NotFound: search completed without a cycle"
                else:
                    w = construct(spec, u, v, L, stats)
            except BudgetExhausted as exc:
                w, reason = None, f"NotFoundWithinBudget: {exc}"
            except PancyclicError as exc:
                w, reason = None, f"{type(exc).__name__}: {exc}"
            ms = (time.perf_counter() - t) * 1000
            if w is not None:
                bad = validate_cycle(spec, w, (u, v), L)
                if bad is not None:
                    reason = str(bad)
            rows.append((u, v, L, ms, reason))
    return rows, dict(stats)


def sweep(
    spec: GraphSpec,
    edges: str | int | Iterable = "all",
    lengths: tuple[int, int] | None = None,
    engine: str = "constructor",
    jobs: int = 1,
    seed: int | None = None,
    repro_dir: str | Path | None = None,
    budget: int = 2_000_000,
) -> dict:
    """Run ``engine`` on every (edge, length) task and summarise.

    ``edges`` is ``"all"``, a sample size, or an explicit list of pairs.
    Failures are recorded with their inputs and a per-task seed; with
    ``repro_dir`` each one is also written as a standalone JSON file.
    """
    if engine not in ("constructor", "brute"):
        raise ValueError(f"unknown engine {engine!r}")
    base = base_seed(seed)
    if edges == "all":
        pairs = all_edges(spec)
    elif isinstance(edges, int):
        pool = all_edges(spec)
        pairs = random.Random(base).sample(pool, min(edges, len(pool)))
    else:
        pairs = [tuple(e) for e in edges]
    lo, hi = lengths if lengths is not None else (3, spec.order())
    ls = list(range(lo, hi + 1))

    t0 = time.perf_counter()
    label = spec.label
    size = max(1, len(pairs) // (4 * max(1, jobs)))
    chunks = [(label, engine, pairs[i : i + size], ls, budget) for i in range(0, len(pairs), size)]
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_chunk, chunks))
    else:
        results = [_run_chunk(c) for c in chunks]
    wall_ms = (time.perf_counter() - t0) * 1000

    stats: Counter = Counter()
    times: list[float] = []
    per_length: dict[int, dict] = {L: {"tasks": 0, "failed": 0, "ms": []} for L in ls}
    failures = []
    fmt = spec.format_vertex
    for rows, st in results:
        stats.update(st)
        for u, v, L, ms, reason in rows:
            times.append(ms)
            cell = per_length[L]
            cell["tasks"] += 1
            cell["ms"].append(ms)
            if reason is not None:
                cell["failed"] += 1
                failures.append({"edge": f"{fmt(u)}|{fmt(v)}", "length": L, "reason": reason,
                                 "seed": task_seed(base, spec, (u, v), L)})
    if repro_dir is not None and failures:
        out = Path(repro_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, f in enumerate(failures):
            (out / f"repro-{i:05d}.json").write_text(
                json.dumps({"spec": label, "engine": engine, **f}, indent=2))
    return {
        "spec": label,
        "engine": engine,
        "tasks": len(times),
        "ok": len(times) - len(failures),
        "failed": len(failures),
        "wall_ms": round(wall_ms, 1),
        "edges": len(pairs),
        "lengths": [lo, hi],
        "max_constructible": max_length(spec) if engine == "constructor" else None,
        "seed": base,
        "timing_ms": _percentiles(times),
        "per_length": {
            str(L): {"tasks": c["tasks"], "failed": c["failed"],
                     "mean_ms": round(statistics.fmean(c["ms"]), 4) if c["ms"] else 0.0}
            for L, c in per_length.items()
        },
        "fallbacks": dict(sorted(stats.items())),
        "failures": failures,
    }

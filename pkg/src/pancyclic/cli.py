"""Command-line interface: ``pancyclic construct|verify|sweep|order|stats``.

Exit codes: 0 success, 1 failed verification or sweep, 2 bad input,
3 internal construction error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import factorial

from .build import check_supported, construct, max_length
from .errors import InvalidInput, PancyclicError
from .gammak import check_eta_order, eta_order
from .graphs import (
    Arrangement,
    ComplementNonTrivial,
    CycleWitness,
    Derangement,
    FixedK,
    GTilde1,
    parse_edge,
    parse_spec,
)
from .oracle import base_seed, sweep, validate_cycle
from .perm import derangement_count, parse


def _parse_lengths(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"lengths must look like A..B, got {text!r}")


def _edges_arg(text: str):
    if text == "all":
        return "all"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--edges takes 'all' or a sample size")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pancyclic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct", help="print a cycle witness through an edge")
    c.add_argument("--spec", required=True, help="gamma:n, gammak:n:k or arr:n:k")
    c.add_argument("--edge", required=True, help='two vertices in one-line notation, "u|v"')
    c.add_argument("--length", type=int, required=True)
    c.add_argument("--seed", type=int, default=None,
                   help="accepted for symmetry with sweep; construction is deterministic")
    c.add_argument("--out", help="write the witness here instead of stdout")

    v = sub.add_parser("verify", help="check a witness file")
    v.add_argument("--spec", required=True)
    v.add_argument("--witness", required=True)
    v.add_argument("--edge", help="edge the cycle must contain")
    v.add_argument("--length", type=int, help="required cycle length")

    s = sub.add_parser("sweep", help="construct and verify many (edge, length) tasks")
    s.add_argument("--spec", required=True)
    s.add_argument("--edges", type=_edges_arg, default="all", help="'all' or a sample size")
    s.add_argument("--lengths", type=_parse_lengths, help="A..B (default 3..order)")
    s.add_argument("--engine", choices=("constructor", "brute"), default="constructor")
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--repro-dir", help="write one JSON file per failure here")
    s.add_argument("--plot-dir", help="render timing and failure plots here")
    s.add_argument("--budget", type=int, default=2_000_000, help="brute-force step budget per task")

    o = sub.add_parser("order", help="print an arrangement ordering as JSON lines")
    o.add_argument("--spec", required=True, help="gammak:n:k")
    o.add_argument("--start", required=True, help='k-tuple, e.g. "1 2"')

    t = sub.add_parser("stats", help="order, degree and density margins")
    t.add_argument("--spec", required=True)
    return p


def _construct(args) -> int:
    spec = parse_spec(args.spec)
    u, v = parse_edge(spec, args.edge)
    w = construct(spec, u, v, args.length)
    bad = validate_cycle(spec, w, (u, v), args.length)
    if bad is not None:
        print(f"internal error: constructed witness fails: {bad}", file=sys.stderr)
        return 3
    text = w.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _verify(args) -> int:
    spec = parse_spec(args.spec)
    try:
        with open(args.witness) as fh:
            w = CycleWitness.from_json(fh.read(), spec)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"cannot read witness: {exc}", file=sys.stderr)
        return 2
    edge = parse_edge(spec, args.edge) if args.edge else None
    bad = validate_cycle(spec, w, edge, args.length)
    if bad is not None:
        print(str(bad), file=sys.stderr)
        return 1
    print(f"ok: cycle of length {len(w)}")
    return 0


def _sweep(args) -> int:
    spec = parse_spec(args.spec)
    if args.engine == "constructor":
        check_supported(spec)
    report = sweep(spec, args.edges, args.lengths, args.engine, args.jobs,
                   base_seed(args.seed), args.repro_dir, args.budget)
    if args.plot_dir:
        from .report import render  # matplotlib is slow to import

        report["plots"] = [str(p) for p in render(report, args.plot_dir)]
    print(json.dumps(report, indent=2))
    return 0 if report["failed"] == 0 else 1


def _order(args) -> int:
    spec = parse_spec(args.spec)
    if not isinstance(spec, FixedK):
        raise InvalidInput("order needs --spec gammak:n:k")
    try:
        start = parse(args.start)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    order = eta_order(spec.n, spec.k, start)
    problems = check_eta_order(order, spec.n, spec.k)
    if problems:
        print("internal error: " + "; ".join(problems), file=sys.stderr)
        return 3
    for t in order:
        print(json.dumps([x + 1 for x in t]))
    return 0


def _dense_entry(spec) -> dict:
    N, d = spec.order(), spec.degree()
    return {"spec": spec.label, "order": N, "min_degree": d, "bound": (N + 2) / 2,
            "margin": d - (N + 2) / 2}


def _stats(args) -> int:
    spec = parse_spec(args.spec)
    out = {"spec": spec.label, "order": spec.order(), "degree": spec.degree()}
    dense = []
    if isinstance(spec, Derangement):
        out["derangements"] = derangement_count(spec.n)
        if spec.n >= 4:
            dense.append(_dense_entry(ComplementNonTrivial(spec.n - 1)))
    elif isinstance(spec, FixedK):
        m = spec.n - spec.k
        out["block"] = {"spec": f"gamma:{m}", "order": factorial(m), "degree": derangement_count(m)}
        if m >= 4:
            dense.append(_dense_entry(ComplementNonTrivial(m - 1)))
    elif isinstance(spec, Arrangement) and spec.n > spec.k >= 2:
        dense.append(_dense_entry(GTilde1(spec.n, spec.k)))
    out["dense"] = dense
    try:
        check_supported(spec)
        out["max_cycle_length"] = max_length(spec)
    except InvalidInput as exc:
        out["unsupported"] = str(exc)
    print(json.dumps(out, indent=2))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"construct": _construct, "verify": _verify, "sweep": _sweep,
               "order": _order, "stats": _stats}[args.cmd]
    try:
        return handler(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PancyclicError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

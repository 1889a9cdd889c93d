import json

import pytest

from pancyclic.build import construct
from pancyclic.errors import BudgetExhausted
from pancyclic.graphs import ComplementNonTrivial, CycleWitness, Derangement, FixedK, parse_spec
from pancyclic.oracle import (
    KINDS,
    all_edges,
    brute_force_cycle,
    sweep,
    task_seed,
    validate_cycle,
)
from pancyclic.perm import parse

SPEC = Derangement(4)
A, B = parse("1 2 3 4"), parse("2 1 4 3")


@pytest.fixture
def good():
    return list(construct(SPEC, A, B, 6).vertices)


def test_constructor_output_is_accepted(good):
    assert validate_cycle(SPEC, good, (A, B), 6) is None


def test_duplicate_vertex_is_caught(good):
    bad = good[:-1] + [good[2]]
    assert validate_cycle(SPEC, bad, (A, B), 6).kind == "RepeatedVertex"


def test_non_edge_is_caught(good):
    bad = list(good)
    bad[3] = tuple(good[2][:2]) + (good[2][3], good[2][2])  # agrees with neighbour in two places
    v = validate_cycle(SPEC, bad, None, 6)
    assert v.kind in ("NonEdge", "RepeatedVertex")
    delta1 = [A, parse("1 3 4 2"), parse("3 4 2 1")]
    assert validate_cycle(SPEC, delta1).kind == "NonEdge"
    assert validate_cycle(SPEC, delta1).position == 0


def test_wrong_length_is_caught(good):
    assert validate_cycle(SPEC, good, (A, B), 7).kind == "WrongLength"
    assert validate_cycle(SPEC, good[:2]).kind == "WrongLength"


def test_missing_target_edge_is_caught(good):
    assert validate_cycle(SPEC, good, (A, parse("3 4 1 2")), 6).kind == "MissingTargetEdge"


def test_malformed_vertex_is_caught(good):
    assert validate_cycle(SPEC, good[:-1] + [(0, 1, 2)]).kind == "MalformedVertex"
    assert validate_cycle(SPEC, good[:-1] + ["junk"]).kind == "MalformedVertex"


def test_every_corruption_kind_has_a_test():
    assert set(KINDS) == {"MalformedVertex", "WrongLength", "RepeatedVertex", "NonEdge", "MissingTargetEdge"}


def test_reversed_target_edge_counts(good):
    assert validate_cycle(SPEC, good, (B, A), 6) is None


def test_brute_force_finds_triangles_in_gamma4():
    for e in all_edges(SPEC)[:20]:
        w = brute_force_cycle(SPEC, e, 3)
        assert validate_cycle(SPEC, w, e, 3) is None


def test_brute_force_disproves_odd_cycle_in_k33():
    spec = ComplementNonTrivial(3)
    e = all_edges(spec)[0]
    assert brute_force_cycle(spec, e, 5) is None
    assert brute_force_cycle(spec, e, 6) is not None


def test_brute_force_budget():
    with pytest.raises(BudgetExhausted):
        brute_force_cycle(Derangement(5), (parse("1 2 3 4 5"), parse("2 3 4 5 1")), 120, budget=10)


def test_sweep_report_shape(tmp_path):
    rep = sweep(SPEC, edges=3, lengths=(3, 8), seed=7)
    assert rep["tasks"] == 18 and rep["ok"] == 18 and rep["failed"] == 0
    assert {"spec", "tasks", "ok", "failed", "wall_ms", "failures"} <= set(rep)
    assert rep["timing_ms"]["p50"] >= 0


def test_sweep_reports_failures_with_repro_files(tmp_path):
    rep = sweep(FixedK(4, 1), edges=2, lengths=(12, 14), repro_dir=tmp_path)
    assert rep["failed"] == 4 and rep["ok"] == 2
    f = rep["failures"][0]
    assert f["length"] in (13, 14) and "LengthOutOfRange" in f["reason"]
    files = sorted(tmp_path.iterdir())
    assert len(files) == 4
    data = json.loads(files[0].read_text())
    assert data["spec"] == "gammak:4:1" and data["seed"] == f["seed"]


def test_injected_mismatch_is_reported(monkeypatch):
    import pancyclic.oracle as oracle

    def broken(spec, u, v, L, stats=None):
        w = construct(spec, u, v, L)
        return CycleWitness(spec, w.vertices[:-1] + (w.vertices[1],), w.target)

    monkeypatch.setattr(oracle, "construct", broken)
    rep = oracle.sweep(SPEC, edges=1, lengths=(5, 5))
    assert rep["failed"] == 1
    assert rep["failures"][0]["reason"].startswith("RepeatedVertex")


def test_task_seed_is_stable():
    s = task_seed(3, SPEC, (A, B), 5)
    assert s == task_seed(3, SPEC, (A, B), 5)
    assert s != task_seed(4, SPEC, (A, B), 5)


def test_brute_engine_agrees_on_small_lengths():
    rep = sweep(parse_spec("gamma:4"), edges=5, lengths=(3, 10), engine="brute")
    assert rep["failed"] == 0

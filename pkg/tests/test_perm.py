from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pancyclic.perm import (
    compose,
    coset,
    cyclic_permutations,
    delta,
    derangement_count,
    derangements_avoiding,
    disagree,
    falling,
    fmt,
    inverse,
    is_cyclic,
    parity,
    parse,
    position_coset,
    power,
    powers,
    relabel,
    shift,
)


def test_compose_applies_right_factor_first():
    # 1-based: (2 1 3)∘(1 3 2) = 2 3 1
    assert compose(parse("2 1 3"), parse("1 3 2")) == parse("2 3 1")


def test_compose_rejects_mismatched_sizes():
    with pytest.raises(ValueError):
        compose((0, 1), (0, 1, 2))


def test_power_of_four_cycle():
    assert power(parse("2 3 4 1"), 2) == parse("3 4 1 2")
    assert power(parse("2 3 4 1"), 4) == (0, 1, 2, 3)


def test_parse_and_format_round_trip():
    assert fmt(parse("2 1 4 3")) == "2 1 4 3"
    with pytest.raises(ValueError):
        parse("a b")
    with pytest.raises(ValueError):
        parse("")


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 0), (2, 1), (3, 2), (4, 9), (5, 44), (6, 265)])
def test_derangement_count_matches_enumeration(n, expected):
    assert derangement_count(n) == expected
    brute = sum(1 for p in permutations(range(n)) if all(p[i] != i for i in range(n)))
    assert brute == expected


def test_derangements_avoiding_is_exact():
    forb = (2, 0, 3, 1)
    got = set(derangements_avoiding(forb))
    want = {p for p in permutations(range(4)) if disagree(p, forb)}
    assert got == want


def test_derangements_avoiding_over_larger_pool_gives_arrangements():
    got = list(derangements_avoiding((0, 1), range(3)))
    assert sorted(got) == [(1, 0), (1, 2), (2, 0)]


def test_cyclic_permutations_count_and_order():
    cyc = list(cyclic_permutations(5))
    assert len(cyc) == factorial(4)
    assert cyc == sorted(cyc)
    assert all(is_cyclic(c) for c in cyc)


def test_falling():
    assert falling(5, 4) == 120
    assert falling(6, 0) == 1


def test_parity_of_transposition():
    assert parity((1, 0, 2)) == 1
    assert parity((1, 2, 0)) == 0


perm_pairs = st.integers(3, 8).flatmap(
    lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)),
                        st.permutations(range(n)).filter(is_cyclic))
)


@settings(max_examples=200, deadline=None)
@given(perm_pairs)
def test_orbit_agreement_sum_equals_n(data):
    a, b, s = (tuple(x) for x in data)
    assert sum(delta(a, compose(p, b)) for p in powers(s)) == len(a)


@settings(max_examples=200, deadline=None)
@given(st.integers(4, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))).flatmap(
    lambda nk: st.tuples(
        st.permutations(range(nk[0])).map(lambda p: tuple(p[: nk[1]])),
        st.permutations(range(nk[0])).map(lambda p: tuple(p[: nk[1]])),
        st.permutations(range(nk[1])).filter(is_cyclic),
    )))
def test_position_orbit_sum_equals_shared_entries(data):
    a, b, s = (tuple(x) for x in data)
    total = sum(delta(a, shift(b, p)) for p in powers(s))
    assert total == len(set(a) & set(b))


def test_value_orbit_is_a_clique():
    s = parse("2 3 4 5 1")
    orbit = coset(parse("3 1 2 5 4"), s)
    assert len(set(orbit)) == 5
    assert all(disagree(x, y) for x in orbit for y in orbit if x != y)


def test_position_orbit_is_a_clique():
    orbit = position_coset((4, 0, 2, 5), parse("2 3 4 1"))
    assert len(set(orbit)) == 4
    assert all(disagree(x, y) for x in orbit for y in orbit if x != y)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.tuples(*[st.permutations(range(n))] * 3)))
def test_relabel_preserves_agreements(data):
    g, a, b = (tuple(x) for x in data)
    assert delta(relabel(g, a), relabel(g, b)) == delta(a, b)
    assert compose(inverse(g), g) == tuple(range(len(g)))

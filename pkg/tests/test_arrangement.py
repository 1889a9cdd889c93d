import random
from collections import Counter

import pytest

from pancyclic import arrangement
from pancyclic.errors import InvalidInput, LengthOutOfRange
from pancyclic.graphs import Arrangement, GTilde1
from pancyclic.oracle import validate_cycle
from pancyclic.perm import disagree, falling, position_coset


def check(a, b, L, n, stats=None):
    cyc = arrangement.cycle(a, b, L, n, stats)
    assert cyc[:2] == [a, b]
    assert validate_cycle(Arrangement(n, len(a)), cyc, (a, b), L) is None


@pytest.mark.parametrize("n,k", [(5, 4), (6, 4), (6, 5)])
def test_split_sizes(n, k):
    h1 = arrangement.h1_size(n, k)
    h2 = falling(n - 1, k)
    assert h1 + h2 == falling(n, k)


@pytest.mark.parametrize("n,k", [(5, 4), (6, 4), (6, 5)])
def test_position_cosets_partition_h1_into_cliques(n, k):
    sigma = tuple((p + 1) % k for p in range(k))
    pivot = n - 1
    reps = [t for t in Arrangement(n, k).vertices() if t[-1] == pivot]
    covered = []
    for t in reps:
        orbit = position_coset(t, sigma)
        assert all(disagree(x, y) for x in orbit for y in orbit if x != y)
        covered.extend(orbit)
    h1 = [t for t in Arrangement(n, k).vertices() if pivot in t]
    assert sorted(covered) == sorted(h1)


def test_quotient_is_dense_enough():
    for n, k in [(5, 4), (6, 4), (6, 5), (7, 4)]:
        g = GTilde1(n, k)
        assert 2 * g.degree() >= g.order() + 2


@pytest.mark.parametrize("seed", range(6))
def test_h1_cycles(seed):
    rng = random.Random(seed)
    n, k = 6, 4
    v = rng.randrange(n)
    spec = Arrangement(n, k)
    a = rng.choice([t for t in spec.vertices() if v in t])
    b = rng.choice([t for t in spec.neighbors(a) if v in t])
    for L in range(3, arrangement.h1_size(n, k) + 1, 7):
        cyc = arrangement.h1_cycle(a, b, L, v, n)
        assert all(v in t for t in cyc)
        assert validate_cycle(spec, cyc, (a, b), L) is None


@pytest.mark.parametrize("a,b", [
    ((0, 1, 2, 3), (1, 0, 3, 2)),   # same entries
    ((0, 1, 2, 3), (1, 2, 3, 4)),   # one entry swapped out
    ((0, 1, 2, 3), (4, 0, 1, 2)),
])
def test_g54_every_length(a, b):
    stats = Counter()
    for L in range(3, 121):
        check(a, b, L, 5, stats)
    assert stats["merge_same_set"] + stats["merge_diff_set"] > 0


def test_g64_sampled_lengths():
    rng = random.Random(5)
    spec = Arrangement(6, 4)
    for _ in range(4):
        a = tuple(rng.sample(range(6), 4))
        b = rng.choice(list(spec.neighbors(a)))
        for L in rng.sample(range(3, 361), 30) + [360]:
            check(a, b, L, 6)


def test_full_length_delegates_to_permutations():
    check((0, 1, 2, 3), (1, 0, 3, 2), 24, 4)


def test_third_vertex_avoids_both():
    z = arrangement.third_vertex(5, (0, 1, 2, 3), (1, 0, 3, 2), must=4)
    assert 4 in z and disagree(z, (0, 1, 2, 3)) and disagree(z, (1, 0, 3, 2))


def test_rejects_bad_inputs():
    with pytest.raises(InvalidInput):
        arrangement.cycle((0, 1, 2), (1, 2, 0), 3, 4)
    with pytest.raises(InvalidInput):
        arrangement.cycle((0, 1, 2, 3), (0, 2, 3, 1), 5, 5)
    with pytest.raises(LengthOutOfRange):
        arrangement.cycle((0, 1, 2, 3), (1, 0, 3, 2), 121, 5)

import random
from fractions import Fraction as F

import pytest

from nucnz.fixtures import random_monotone_game, random_subspace_rows
from nucnz.games import (
    brute_lsa_min_excess,
    brute_nz_min_excess,
    make_allocation,
)
from nucnz.linalg import LinearSubspace
from nucnz.nz import LSAInstance, NZInstance, lsa_to_nz, nz_to_lsa


def test_lsa_to_nz_zero_subspace():
    g = random_monotone_game(2, 1)
    inst = LSAInstance(g, make_allocation([1, 1]), LinearSubspace.zero(2))
    out = lsa_to_nz(inst)
    assert [i.a for i in out] == [(1, 0), (0, 1)]


def test_lsa_to_nz_line():
    g = random_monotone_game(3, 2)
    L = LinearSubspace.from_rows([[1, 1, 0]], 3)
    out = lsa_to_nz(inst := LSAInstance(g, make_allocation([1, 1, 1]), L))
    assert sorted(i.a for i in out) == [(0, 0, 1), (1, -1, 0)]
    assert len(out) == 3 - L.dim


def test_nz_to_lsa_axis():
    g = random_monotone_game(3, 3)
    inst = NZInstance(g, make_allocation([1, 1, 1]), (1, 0, 0))
    lsa = nz_to_lsa(inst)
    assert lsa.L.basis_rows == ((F(0), F(1), F(0)), (F(0), F(0), F(1)))


def test_nz_to_lsa_signed():
    g = random_monotone_game(3, 4)
    inst = NZInstance(g, make_allocation([1, 1, 1]), (1, -1, 0))
    lsa = nz_to_lsa(inst)
    assert lsa.L.basis_rows == ((F(1), F(1), F(0)), (F(0), F(0), F(1)))


def test_invariants_rejected():
    g = random_monotone_game(2, 5)
    with pytest.raises(ValueError):
        NZInstance(g, make_allocation([1, 1]), (0, 0))
    full = LinearSubspace.from_rows([[1, 0], [0, 1]], 2)
    with pytest.raises(ValueError):
        LSAInstance(g, make_allocation([1, 1]), full)


def rand_alloc(rng, n, signed=True):
    lo = -4 if signed else 0
    return make_allocation(
        [F(rng.randint(lo, 8), rng.choice([1, 2, 3])) for _ in range(n)]
    )


def test_lsa_to_nz_preserves_optimum():
    rng = random.Random(12)
    done = 0
    trial = 0
    while done < 60:
        trial += 1
        n = rng.randint(2, 6)
        g = random_monotone_game(n, 2000 + trial)
        L = LinearSubspace.from_rows(random_subspace_rows(n, n - 1, 3000 + trial), n)
        if not L.is_proper():
            continue
        y = rand_alloc(rng, n)
        inst = LSAInstance(g, y, L)
        direct = brute_lsa_min_excess(g, y, L)
        via = min(brute_nz_min_excess(g, y, sub.a).excess for sub in lsa_to_nz(inst))
        assert direct.excess == via
        done += 1


def test_nz_round_trip_preserves_optimum():
    rng = random.Random(21)
    for trial in range(60):
        n = rng.randint(2, 6)
        g = random_monotone_game(n, 4000 + trial)
        a = [rng.randint(-3, 3) for _ in range(n)]
        if all(v == 0 for v in a):
            a[rng.randrange(n)] = 1
        y = rand_alloc(rng, n)
        inst = NZInstance(g, y, tuple(a))
        direct = brute_nz_min_excess(g, y, a)
        lsa = nz_to_lsa(inst)
        via = brute_lsa_min_excess(g, y, lsa.L)
        assert direct.excess == via.excess
        back = min(
            brute_nz_min_excess(g, y, sub.a).excess for sub in lsa_to_nz(lsa)
        )
        assert back == direct.excess

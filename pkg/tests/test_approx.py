import random
from fractions import Fraction as F

import pytest

from nucnz.approx import (
    ApproxSolution,
    exact_min_excess_oracle,
    lsa_approx,
    restricted_min_excess,
)
from nucnz.fixtures import (
    HardnessParams,
    gen_hardness_pair,
    random_monotone_game,
    random_subspace_rows,
)
from nucnz.games import (
    brute_lsa_min_excess,
    brute_min_excess,
    coalition_sum,
    excess,
    make_allocation,
)
from nucnz.linalg import LinearSubspace
from nucnz.nz import LSAInstance


def nonneg_alloc(rng, n):
    return make_allocation([F(rng.randint(0, 8), rng.choice([1, 2])) for _ in range(n)])


def test_restricted_plain_call_matches_oracle():
    g = random_monotone_game(4, 1)
    y = make_allocation([1, 2, 0, 1])
    oracle = exact_min_excess_oracle()
    sol = restricted_min_excess(oracle, g, y, 0, 0)
    rep = brute_min_excess(g, y)
    assert sol.coalition == rep.coalition
    assert sol.lower_value_bound == g.value(rep.coalition)


def test_restricted_forced_in_matches_brute():
    rng = random.Random(13)
    oracle = exact_min_excess_oracle()
    for trial in range(25):
        n = rng.randint(2, 6)
        g = random_monotone_game(n, 500 + trial)
        y = nonneg_alloc(rng, n)
        p = rng.randrange(n)
        sol = restricted_min_excess(oracle, g, y, 1 << p, 0)
        assert sol.coalition & (1 << p)
        best = min(
            excess(g, y, m) for m in range(1 << n) if m & (1 << p)
        )
        assert excess(g, y, sol.coalition) == best
        assert sol.lower_value_bound <= g.value(sol.coalition)


def test_restricted_forced_out_matches_brute():
    rng = random.Random(14)
    oracle = exact_min_excess_oracle()
    for trial in range(25):
        n = rng.randint(2, 6)
        g = random_monotone_game(n, 600 + trial)
        y = nonneg_alloc(rng, n)
        q = rng.randrange(n)
        sol = restricted_min_excess(oracle, g, y, 0, 1 << q)
        assert not sol.coalition & (1 << q)
        best = min(excess(g, y, m) for m in range(1 << n) if not m & (1 << q))
        assert excess(g, y, sol.coalition) == best


def test_restricted_overlap_rejected():
    g = random_monotone_game(3, 2)
    oracle = exact_min_excess_oracle()
    with pytest.raises(ValueError):
        restricted_min_excess(oracle, g, make_allocation([1, 1, 1]), 0b01, 0b11)


def test_restricted_sandwich_property():
    rng = random.Random(15)
    oracle = exact_min_excess_oracle()
    for trial in range(25):
        n = rng.randint(3, 6)
        g = random_monotone_game(n, 700 + trial)
        y = nonneg_alloc(rng, n)
        A = rng.randrange(1 << n)
        B_pool = [(p) for p in range(n) if not (A >> p) & 1]
        B = 0
        for p in B_pool:
            if rng.random() < 0.3:
                B |= 1 << p
        sol = restricted_min_excess(oracle, g, y, A, B)
        assert sol.coalition & A == A
        assert sol.coalition & B == 0


def guarantee_holds(g, y, L, eps, sol):
    opt = brute_lsa_min_excess(g, y, L)
    star = opt.coalition
    lhs = coalition_sum(y, sol.coalition) - sol.lower_value_bound
    rhs = (1 + eps) * coalition_sum(y, star) - g.value(star)
    return lhs <= rhs


def test_lsa_approx_feasible_and_guaranteed():
    rng = random.Random(16)
    oracle = exact_min_excess_oracle()
    done = 0
    trial = 0
    while done < 40:
        trial += 1
        n = rng.randint(2, 6)
        g = random_monotone_game(n, 800 + trial)
        L = LinearSubspace.from_rows(random_subspace_rows(n, n - 1, 900 + trial), n)
        if not L.is_proper():
            continue
        y = nonneg_alloc(rng, n)
        inst = LSAInstance(g, y, L)
        for eps in (F(1, 2), F(1, 4)):
            try:
                sol = lsa_approx(oracle, eps, inst)
            except ValueError:
                # no singleton avoids L; precondition genuinely violated
                assert all(
                    L.contains([1 if i == p else 0 for i in range(n)])
                    for p in range(n)
                )
                break
            assert not L.contains(
                [1 if (sol.coalition >> p) & 1 else 0 for p in range(n)]
            )
            assert sol.lower_value_bound <= g.value(sol.coalition)
            assert guarantee_holds(g, y, L, eps, sol)
        else:
            done += 1


def test_lsa_approx_zero_subspace_nonempty():
    rng = random.Random(44)
    oracle = exact_min_excess_oracle()
    for trial in range(10):
        n = rng.randint(2, 6)
        g = random_monotone_game(n, 300 + trial)
        y = nonneg_alloc(rng, n)
        inst = LSAInstance(g, y, LinearSubspace.zero(n))
        sol = lsa_approx(oracle, F(1, 4), inst)
        assert sol.coalition != 0
        assert guarantee_holds(g, y, LinearSubspace.zero(n), F(1, 4), sol)


def test_lsa_approx_exact_when_unconstrained_optimum_feasible():
    # Avoided subspace orthogonal to the optimum's incidence vector.
    g = random_monotone_game(4, 9)
    y = make_allocation([F(1, 2), F(3), F(2), F(1)])
    rep = brute_min_excess(g, y)
    if rep.coalition == 0:
        L = LinearSubspace.zero(4)
        sol = lsa_approx(exact_min_excess_oracle(), F(1, 2), LSAInstance(g, y, L))
        best = brute_lsa_min_excess(g, y, L)
        assert excess(g, y, sol.coalition) >= best.excess
    else:
        L = LinearSubspace.zero(4)
        sol = lsa_approx(exact_min_excess_oracle(), F(1, 2), LSAInstance(g, y, L))
        assert excess(g, y, sol.coalition) == brute_lsa_min_excess(g, y, L).excess


def test_lsa_approx_on_adversarial_family():
    params = HardnessParams(2)
    _, planted = gen_hardness_pair(params)
    n = params.player_count
    y = make_allocation([1] * n)
    a = [1] * (2 * params.k) + [-1] * (2 * params.k)
    from nucnz.nz import NZInstance, nz_to_lsa

    inst = nz_to_lsa(NZInstance(planted, y, tuple(a)))
    sol = lsa_approx(exact_min_excess_oracle(), F(1, 2), inst)
    assert guarantee_holds(planted, y, inst.L, F(1, 2), sol)


def test_lsa_approx_rejects_negative_allocation():
    g = random_monotone_game(3, 1)
    inst = LSAInstance(g, make_allocation([-1, 1, 1]), LinearSubspace.zero(3))
    with pytest.raises(ValueError):
        lsa_approx(exact_min_excess_oracle(), F(1, 2), inst)

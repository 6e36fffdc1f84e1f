import random
from fractions import Fraction as F

import pytest

from nucnz.fixtures import (
    HardnessParams,
    InstabilityParams,
    PackingGame,
    gen_hardness_pair,
    gen_instability_pair,
    hardness_adversary_check,
    instability_closed_forms,
    random_graph,
    random_monotone_game,
    verify_instability_balance,
)
from nucnz.games import coalition_of, excess, is_monotone, is_superadditive


def test_packing_game_value():
    # players 0,1,2; sets {0,1} w=3, {1,2} w=4, {0} w=1
    g = PackingGame(3, [(0b011, F(3)), (0b110, F(4)), (0b001, F(1))])
    assert g.value(0) == 0
    assert g.value(0b011) == 3
    assert g.value(0b111) == 5  # {0} + {1,2}
    assert g.value(0b110) == 4
    assert g.value(0b101) == 1


def test_packing_game_monotone_superadditive():
    rng = random.Random(4)
    for trial in range(10):
        n = rng.randint(2, 6)
        sets = []
        for _ in range(rng.randint(1, 6)):
            mask = rng.randrange(1, 1 << n)
            sets.append((mask, F(rng.randint(0, 9), rng.choice([1, 2]))))
        g = PackingGame(n, sets)
        assert is_monotone(g)
        assert is_superadditive(g)


def test_instability_params_validation():
    with pytest.raises(ValueError):
        InstabilityParams(0, F(0), F(1))
    with pytest.raises(ValueError):
        InstabilityParams(2, F(1, 2), F(1))  # K < 2^n eps
    p = InstabilityParams(0, F(1, 16), F(64))
    assert p.player_count == 17


def test_instability_set_count():
    p = InstabilityParams(0, F(1, 16), F(64))
    v, vt = gen_instability_pair(p)
    assert len(v.sets) == 1 + 4 + 8 + 4
    # the two games differ only in the singleton weight
    diff = [
        (m, w1, w2)
        for (m, w1), (m2, w2) in zip(v.sets, vt.sets)
        if w1 != w2
    ]
    assert diff == [(1, F(1), F(1) - F(1, 16))]


def test_instability_pair_weights():
    p = InstabilityParams(1, F(1, 8), F(32))
    v, _ = gen_instability_pair(p)
    weights = dict(v.sets)
    assert weights[1 << 0] == 1
    pair_l2 = coalition_of([p.p_index(2, 1), p.q_index(2, 1)])
    assert weights[pair_l2] == 4 * p.K


def test_instability_value_gap_bounded():
    p = InstabilityParams(0, F(1, 16), F(64))
    v, vt = gen_instability_pair(p)
    tv, tvt = v.table(), vt.table()
    assert max(abs(a - b) for a, b in zip(tv, tvt)) <= p.eps


def test_instability_monotone_at_n0():
    p = InstabilityParams(0, F(1, 16), F(64))
    v, vt = gen_instability_pair(p)
    assert is_monotone(v, max_players=17)
    assert is_monotone(vt, max_players=17)


def test_instability_superadditive_sampled_at_n0():
    p = InstabilityParams(0, F(1, 16), F(64))
    v, _ = gen_instability_pair(p)
    table = v.table()
    rng = random.Random(5)
    full = (1 << 17) - 1
    for _ in range(20000):
        s = rng.randrange(1 << 17)
        t = rng.randrange(1 << 17) & (full ^ s)
        assert table[s | t] >= table[s] + table[t]


def test_balance_ledger_all_n():
    for n in range(0, 11):
        params = InstabilityParams(n, F(1, 16), F(2) ** n * F(1, 16) + 1)
        rep = verify_instability_balance(params)
        assert rep["ok"], [c for c in rep["checks"] if not c["pass"]][:3]


def test_closed_forms_match_definitions():
    p = InstabilityParams(0, F(1, 16), F(64))
    y, yt = instability_closed_forms(p)
    assert y[0] == 1 and yt[0] == 1 - p.eps
    assert y[p.p_index(1, 1)] == p.K
    assert yt[p.p_index(1, 1)] == p.K + p.eps / 2
    assert yt[p.q_index(2, 3)] == 2 * p.K - p.eps
    assert sum(y) == 1 + 8 * (p.K + 2 * p.K)


def test_hardness_values():
    params = HardnessParams(2)
    base, planted = gen_hardness_pair(params)
    five = coalition_of([0, 1, 2, 3, 4])
    assert base.value(five) == F(9, 2)
    assert planted.value(params.s_star) == 4 + F(1, 6)
    # unbalanced small set scores its size
    assert base.value(coalition_of([0, 1])) == 2
    balanced = coalition_of([0, 1, 4, 5])
    assert base.value(balanced) == F(9, 2)


def test_hardness_monotone():
    params = HardnessParams(2)
    base, planted = gen_hardness_pair(params)
    assert is_monotone(base)
    assert is_monotone(planted)


def test_hardness_planted_dominates():
    params = HardnessParams(2)
    base, planted = gen_hardness_pair(params)
    tb, tp = base.table(), planted.table()
    assert all(a <= b for a, b in zip(tb, tp))
    diff = [m for m in range(len(tb)) if tb[m] != tp[m]]
    assert diff == [params.s_star]


def test_hardness_adversary_check_k2():
    assert hardness_adversary_check(HardnessParams(2))["ok"]


def test_hardness_rejects_bad_star():
    with pytest.raises(ValueError):
        HardnessParams(2, s_star=coalition_of([0, 1, 2, 3]))


def test_random_monotone_game_deterministic():
    g1 = random_monotone_game(6, 11)
    g2 = random_monotone_game(6, 11)
    assert g1.table() == g2.table()
    assert g1.value(0) == 0
    assert is_monotone(g1)


def test_random_graph_deterministic():
    g1 = random_graph(5, 7, 3)
    g2 = random_graph(5, 7, 3)
    assert g1.edges == g2.edges
    assert not g1.has_loops()

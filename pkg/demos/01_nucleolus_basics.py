"""Nucleolus basics: excesses, the least core, and the fixing trace.

Walks through a couple of three-player table games and shows what the
solver returns: exact rational allocations, the level values at which
coalitions were fixed, and the dual weights that caused the fixing.
"""

from fractions import Fraction as F

from nucnz.games import TableGame, excess, make_allocation
from nucnz.mps import least_core, mps_nucleolus, reference_nucleolus

# --- A three-player unanimity game: only the grand coalition earns. -------
unanimity = TableGame([0, 0, 0, 0, 0, 0, 0, 1])

xi, y = least_core(unanimity)
print("unanimity least core: xi =", xi, " allocation =", y)

res = mps_nucleolus(unanimity)
print("unanimity nucleolus:", res.allocation)
for i, rec in enumerate(res.trace, 1):
    print(f"  level {i}: xi = {rec.xi}, fixed masks = {list(rec.fixed)}")

# --- An asymmetric game: players 0 and 1 can earn without player 2. -------
# masks index coalitions bitwise: 0b011 is {0,1}, 0b111 is everyone
g = TableGame([0, 0, 0, 1, 0, 0, 0, 1])
res = mps_nucleolus(g)
print("\npair game nucleolus:", res.allocation)
print("excess of {0,1}:", excess(g, res.allocation, 0b011))
print("excess of {2}:  ", excess(g, res.allocation, 0b100))

# --- The independent validator must agree exactly. ------------------------
assert reference_nucleolus(g).allocation == res.allocation
print("\nreference algorithm agrees exactly")

# --- Cost games work through the sign adapter: an additive cost game ------
# splits costs exactly at the individual costs.
costs = [F(2), F(3), F(4)]
table = [sum(costs[p] for p in range(3) if (m >> p) & 1) for m in range(8)]
cost_game = TableGame(table, kind="cost")
print("\nadditive cost game nucleolus:", mps_nucleolus(cost_game).allocation)

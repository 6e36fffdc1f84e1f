"""Randomized exact-weight perfect matchings from a symbolic skew matrix.

Each edge enters the skew adjacency matrix as a random field scalar times
x^weight; the pfaffian polynomial's support then lists (with one-sided
error only) every achievable perfect-matching total.  Witnesses come from
iterative edge deletion and are always verified before being returned.
"""

import random
from fractions import Fraction as F

from nucnz.bmatch import NZMatchingInstance, nz_matching_randomized
from nucnz.exact_matching import exact_weight_perfect_matching, pf_weight_support
from nucnz.graphs import Graph

# Two disjoint edges with weights 2 and 3: totals 5 exists, 4 does not.
g = Graph.of(4, [(0, 1), (2, 3)])
print("exact total 5:", exact_weight_perfect_matching(g, [2, 3], 5, seed=1))
print("exact total 4:", exact_weight_perfect_matching(g, [2, 3], 4, seed=1))

# The support of the pfaffian polynomial on a 4-cycle with weights 1,2,3,4:
# perfect matchings are {e0,e2} (total 4) and {e1,e3} (total 6).
c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
rng = random.Random(5)
scalars = [rng.randrange(1, 1 << 61) for _ in range(c4.m)]
coeffs = pf_weight_support(c4, [1, 2, 3, 4], scalars)
print("\nachievable perfect-matching totals on the 4-cycle:",
      [r for r, cf in enumerate(coeffs) if cf])

# Bounded-integer non-zero matchings: labels are folded into the weights
# with a dominating factor, so one support computation lists every
# (label sum, weight) pair at once.
g2 = Graph.of(4, [(0, 1), (2, 3), (1, 2)])
inst = NZMatchingInstance(g2, (F(3), F(3), F(1)), (1, -1, 0))
matching, weight = nz_matching_randomized(inst, seed=11)
print("\nbest label-carrying matching:", matching, "weight", weight)
assert sum(inst.a[e] for e in matching) != 0

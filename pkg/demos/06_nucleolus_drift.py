"""How unstable is the nucleolus?  Exponentially, in the player count.

Two packing games on the same 17-player ladder differ only in the weight
of one singleton set, by epsilon.  Their nucleoli drift apart by
2^level * epsilon along the ladder.  The closed forms are verified by an
exact balance ledger for tall ladders, and for the shortest ladder the
full LP scheme reproduces them from scratch (takes a few seconds).
"""

import sys
from fractions import Fraction as F

from nucnz.fixtures import (
    InstabilityParams,
    gen_instability_pair,
    instability_closed_forms,
    verify_instability_balance,
)
from nucnz.mps import mps_nucleolus

params = InstabilityParams(n=0, eps=F(1, 16), K=F(64))
print("players:", params.player_count, " value perturbation:", params.eps)

report = verify_instability_balance(params)
print("balance ledger:", len(report["checks"]), "exact checks, ok =", report["ok"])

for n in range(1, 11):
    p = InstabilityParams(n, F(1, 16), F(2) ** n * F(1, 16) + 1)
    assert verify_instability_balance(p)["ok"]
print("ledger verified for ladders up to n = 10 "
      f"({InstabilityParams(10, F(1,16), F(2)**10 * F(1,16) + 1).player_count} players)")

y, yt = instability_closed_forms(params)
drift = [abs(b - a) for a, b in zip(y, yt)]
print("closed-form drift per player (distinct values):", sorted(set(drift)))

if "--solve" in sys.argv:
    print("\nrecomputing both nucleoli from scratch (2^17 coalitions each)...")
    v, vt = gen_instability_pair(params)
    res = mps_nucleolus(v, mode="enumerate")
    rest = mps_nucleolus(vt, mode="enumerate")
    assert res.allocation == y and rest.allocation == yt
    print("full scheme reproduces both closed forms exactly")
    print("top-of-ladder drift:", max(abs(b - a) for a, b in zip(res.allocation, rest.allocation)))
else:
    print("\n(pass --solve to recompute both nucleoli by the full scheme)")

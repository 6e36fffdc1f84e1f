"""Trading subspace avoidance for an arbitrarily small approximation loss.

Works for monotone games with non-negative values and non-negative
allocations.  An alpha-approximate unconstrained-excess oracle returns a
coalition S and a lower value bound lam <= v(S) with
y(S) - lam <= alpha * y(S*) - v(S*); the reduction here turns it into an
(alpha + eps)-approximate solver under a subspace-avoidance constraint by
solving restricted problems that force chosen players in or out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .games import (
    Allocation,
    GameOracle,
    brute_min_excess,
    coalition_members,
    coalition_of,
    coalition_sum,
    coalition_vector,
    make_allocation,
)
from .nz import LSAInstance

__all__ = [
    "ApproxSolution",
    "MinExcessOracle",
    "exact_min_excess_oracle",
    "restricted_min_excess",
    "lsa_approx",
]


@dataclass(frozen=True)
class ApproxSolution:
    coalition: int
    lower_value_bound: Fraction


@dataclass(frozen=True)
class MinExcessOracle:
    """Unconstrained minimum-excess solver with guarantee factor alpha."""

    alpha: Fraction
    solve: Callable[[GameOracle, Allocation], ApproxSolution]

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")


def exact_min_excess_oracle() -> MinExcessOracle:
    """Brute-force oracle (alpha = 1, exact lower bound)."""

    def solve(g: GameOracle, y: Allocation) -> ApproxSolution:
        rep = brute_min_excess(g, y)
        return ApproxSolution(rep.coalition, g.value(rep.coalition))

    return MinExcessOracle(alpha=Fraction(1), solve=solve)


def restricted_min_excess(
    oracle: MinExcessOracle,
    g: GameOracle,
    y: Sequence[Fraction],
    A: int,
    B: int,
    upper: Fraction | None = None,
) -> ApproxSolution:
    """Approximate minimum excess over coalitions S with A <= S <= P - B.

    Players in A get allocation 0, players in B get a value above any
    coalition worth, and the oracle result is completed with A.  The
    guarantee carries over against the restricted optimum.
    """
    if A & B:
        raise ValueError("forced-in and forced-out sets must be disjoint")
    n = g.player_count
    yf = make_allocation(y)
    if any(v < 0 for v in yf):
        raise ValueError("restricted reduction requires a non-negative allocation")
    U = g.grand_value() if upper is None else Fraction(upper)
    if U < 0:
        raise ValueError("upper bound must be non-negative")
    barrier = oracle.alpha * U + 1
    yhat = []
    for p in range(n):
        if (A >> p) & 1:
            yhat.append(Fraction(0))
        elif (B >> p) & 1:
            yhat.append(barrier)
        else:
            yhat.append(yf[p])
    sol = oracle.solve(g, tuple(yhat))
    if sol.coalition & B:
        raise ValueError("oracle returned a coalition through the barrier")
    return ApproxSolution(sol.coalition | A, sol.lower_value_bound)


def lsa_approx(
    oracle: MinExcessOracle, eps: Fraction, inst: LSAInstance
) -> ApproxSolution:
    """(alpha + eps)-approximate subspace-avoiding minimum excess.

    Enumerates the bounded family of forced-in/forced-out patterns that
    the analysis needs: every single forced-out player, and every in-set
    of at most ceil(1/eps) avoidance-relevant players together with each
    tie-split of its smallest allocation value.  All feasible candidates
    are collected and the best one returned.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    g, y, L = inst.game, inst.y, inst.L
    n = g.player_count
    if any(v < 0 for v in y):
        raise ValueError("the reduction requires a non-negative allocation")
    prime = [p for p in range(n) if not L.contains(coalition_vector(1 << p, n))]
    if not prime:
        raise ValueError("no singleton avoids the subspace; reduction not applicable")
    K = math.ceil(1 / eps)
    U = g.grand_value()

    candidates: list[tuple[Fraction, int, Fraction]] = []

    def consider(sol: ApproxSolution):
        if L.contains(coalition_vector(sol.coalition, n)):
            return
        val = coalition_sum(y, sol.coalition) - sol.lower_value_bound
        candidates.append((val, sol.coalition, sol.lower_value_bound))

    # Unconstrained call; feasible whenever its optimum already avoids L.
    consider(restricted_min_excess(oracle, g, y, 0, 0, upper=U))

    # One forced-out player at a time; the completion with p stays covered
    # by the same lower bound since the game is monotone.
    for p in prime:
        sol = restricted_min_excess(oracle, g, y, 0, 1 << p, upper=U)
        consider(sol)
        consider(ApproxSolution(sol.coalition | (1 << p), sol.lower_value_bound))

    # Bounded in-sets with tie-splits on the minimum allocation value.
    seen: set[tuple[int, int]] = set()
    for size in range(1, K + 1):
        for combo in combinations(prime, size):
            inset = coalition_of(combo)
            if size < K:
                out = coalition_of([p for p in prime if not (inset >> p) & 1])
                patterns = [out]
            else:
                m = min(y[p] for p in combo)
                rest = [p for p in prime if not (inset >> p) & 1]
                above = coalition_of([p for p in rest if y[p] > m])
                ties = [p for p in rest if y[p] == m]
                patterns = []
                for r in range(len(ties) + 1):
                    for tcombo in combinations(ties, r):
                        patterns.append(above | coalition_of(tcombo))
            for out in patterns:
                A = coalition_of([p for p in prime if not (out >> p) & 1])
                key = (A, out)
                if key in seen:
                    continue
                seen.add(key)
                consider(restricted_min_excess(oracle, g, y, A, out, upper=U))

    if not candidates:
        raise RuntimeError(
            f"no feasible candidate found (players={n}, avoidance dim={L.dim})"
        )
    best = min(candidates, key=lambda t: (t[0], t[1]))
    return ApproxSolution(best[1], best[2])

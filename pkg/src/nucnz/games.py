"""Players, coalitions, game oracles and brute-force excess solvers.

Coalitions are plain ints used as bit masks over the player index space;
bit p set means player p belongs to the coalition.  Brute-force solvers
enumerate all 2^n masks with integer-scaled arithmetic and break ties by
the numerically smallest mask, so their output is deterministic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .linalg import LinearSubspace, integer_kernel_basis

Coalition = int
Allocation = tuple[Fraction, ...]

DEFAULT_ENUM_CAP = 24

__all__ = [
    "Coalition",
    "Allocation",
    "CapExceededError",
    "GameOracle",
    "TableGame",
    "ExcessReport",
    "as_value_game",
    "make_allocation",
    "coalition_members",
    "coalition_of",
    "coalition_vector",
    "coalition_sum",
    "enum_cap",
    "excess",
    "brute_min_excess",
    "brute_nz_min_excess",
    "brute_lsa_min_excess",
    "is_monotone",
    "is_superadditive",
]


class CapExceededError(RuntimeError):
    """Raised when an enumeration-based routine is asked to exceed its cap."""


def enum_cap() -> int:
    """Brute-force player cap; NUCNZ_ENUM_CAP overrides the default of 24."""
    raw = os.environ.get("NUCNZ_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


def coalition_members(mask: Coalition) -> list[int]:
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return out


def coalition_of(members: Iterable[int]) -> Coalition:
    mask = 0
    for p in members:
        mask |= 1 << p
    return mask


def coalition_vector(mask: Coalition, n: int) -> tuple[int, ...]:
    """0/1 incidence vector of a coalition."""
    return tuple((mask >> p) & 1 for p in range(n))


def coalition_sum(values: Sequence[Fraction], mask: Coalition) -> Fraction:
    total = Fraction(0)
    p = 0
    while mask:
        if mask & 1:
            total += values[p]
        mask >>= 1
        p += 1
    return total


def make_allocation(values: Iterable) -> Allocation:
    return tuple(Fraction(v) for v in values)


class GameOracle:
    """A cooperative game: player count plus a value (or cost) function.

    Subclasses implement :meth:`value` on coalition masks; it must be pure
    and satisfy value(0) == 0.  ``kind`` is "value" or "cost"; the excess of
    a coalition is y(S) - v(S) for value games and c(S) - y(S) for cost
    games.
    """

    kind = "value"

    def __init__(self, player_count: int):
        self.player_count = player_count
        self._table: list[Fraction] | None = None

    def value(self, mask: Coalition) -> Fraction:
        raise NotImplementedError

    def table(self) -> list[Fraction]:
        """All 2^n values, cached.  Guarded by the enumeration cap."""
        if self._table is None:
            n = self.player_count
            if n > enum_cap():
                raise CapExceededError(
                    f"{n} players exceeds enumeration cap {enum_cap()}"
                )
            self._table = [self.value(m) for m in range(1 << n)]
        return self._table

    def grand_value(self) -> Fraction:
        return self.value((1 << self.player_count) - 1)


class TableGame(GameOracle):
    """Game given by an explicit table of all 2^n coalition values."""

    def __init__(self, values: Sequence, kind: str = "value"):
        n = (len(values)).bit_length() - 1
        if (1 << n) != len(values):
            raise ValueError("table length must be a power of two")
        if kind not in ("value", "cost"):
            raise ValueError(f"bad game kind {kind!r}")
        super().__init__(n)
        self.kind = kind
        self._table = [Fraction(v) for v in values]
        if self._table and self._table[0] != 0:
            raise ValueError("value of the empty coalition must be 0")

    def value(self, mask: Coalition) -> Fraction:
        return self._table[mask]


class _NegatedGame(GameOracle):
    """Value-game view of a cost game (v = -c); used by the LP scheme."""

    def __init__(self, base: GameOracle):
        super().__init__(base.player_count)
        self.base = base

    def value(self, mask: Coalition) -> Fraction:
        return -self.base.value(mask)

    def table(self) -> list[Fraction]:
        if self._table is None:
            self._table = [-v for v in self.base.table()]
        return self._table


def as_value_game(g: GameOracle) -> GameOracle:
    """Adapter: cost games are negated so all solvers can assume values."""
    return g if g.kind == "value" else _NegatedGame(g)


@dataclass(frozen=True)
class ExcessReport:
    coalition: Coalition
    excess: Fraction


def excess(g: GameOracle, y: Sequence[Fraction], mask: Coalition) -> Fraction:
    """y(S) - v(S) for value games; c(S) - y(S) for cost games."""
    ys = coalition_sum(y, mask)
    v = g.value(mask)
    return ys - v if g.kind == "value" else v - ys


def _scaled_scan_data(g: GameOracle, y: Sequence[Fraction]):
    """Integer excess numerators for all masks (common positive denominator).

    Returns (nums, denom) with excess(mask) == nums[mask] / denom exactly.
    """
    n = g.player_count
    table = g.table()
    dy = 1
    yf = [Fraction(v) for v in y]
    for v in yf:
        dy = dy * v.denominator // gcd(dy, v.denominator)
    dv = 1
    for v in table:
        dv = dv * v.denominator // gcd(dv, v.denominator)
    ynum = [int(v * dy) for v in yf]
    sign = 1 if g.kind == "value" else -1
    # y(S) sums for every mask by lowest-bit recursion.
    ysum = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        ysum[m] = ysum[m ^ low] + ynum[low.bit_length() - 1]
    nums = [0] * (1 << n)
    for m in range(1 << n):
        v = table[m]
        nums[m] = sign * (ysum[m] * dv - int(v * dv) * dy)
    return nums, dy * dv


def _require_within_cap(g: GameOracle) -> None:
    if g.player_count > enum_cap():
        raise CapExceededError(
            f"{g.player_count} players exceeds enumeration cap {enum_cap()}"
        )


def brute_min_excess(g: GameOracle, y: Sequence[Fraction]) -> ExcessReport:
    """Minimum excess over all 2^n coalitions; ties go to the lowest mask."""
    _require_within_cap(g)
    nums, den = _scaled_scan_data(g, y)
    best_m = 0
    best = nums[0]
    for m in range(1, len(nums)):
        if nums[m] < best:
            best = nums[m]
            best_m = m
    return ExcessReport(best_m, Fraction(best, den))


def dot_table(a: Sequence[int], n: int) -> list[int]:
    """a(S) for every mask S, by lowest-bit recursion."""
    out = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        out[m] = out[m ^ low] + a[low.bit_length() - 1]
    return out


def brute_nz_min_excess(
    g: GameOracle, y: Sequence[Fraction], a: Sequence[int]
) -> ExcessReport:
    """Minimum excess among coalitions with a(S) != 0."""
    if all(v == 0 for v in a):
        raise ValueError("non-zero constraint vector must have a nonzero entry")
    _require_within_cap(g)
    n = g.player_count
    if len(a) != n:
        raise ValueError("constraint vector length must equal player count")
    nums, den = _scaled_scan_data(g, y)
    adots = dot_table([int(v) for v in a], n)
    best_m = -1
    best = None
    for m in range(1, len(nums)):
        if adots[m] != 0 and (best is None or nums[m] < best):
            best = nums[m]
            best_m = m
    if best_m < 0:
        raise ValueError("no coalition satisfies the non-zero constraint")
    return ExcessReport(best_m, Fraction(best, den))


def brute_lsa_min_excess(
    g: GameOracle, y: Sequence[Fraction], L: LinearSubspace
) -> ExcessReport:
    """Minimum excess among coalitions whose incidence vector avoids ``L``."""
    n = g.player_count
    if L.ambient_dim != n:
        raise ValueError("subspace ambient dimension must equal player count")
    if not L.is_proper():
        raise ValueError("avoided subspace must be proper")
    _require_within_cap(g)
    kernel = integer_kernel_basis(L)
    nums, den = _scaled_scan_data(g, y)
    size = 1 << n
    outside = bytearray(size)
    for vec in kernel:
        dots = dot_table(vec, n)
        for m in range(size):
            if dots[m] != 0:
                outside[m] = 1
    best_m = -1
    best = None
    for m in range(size):
        if outside[m] and (best is None or nums[m] < best):
            best = nums[m]
            best_m = m
    if best_m < 0:
        raise ValueError("every coalition lies inside the avoided subspace")
    return ExcessReport(best_m, Fraction(best, den))


def is_monotone(g: GameOracle, max_players: int = 16) -> bool:
    """Exact monotonicity check by single-element extensions."""
    n = g.player_count
    if n > max_players:
        raise CapExceededError(f"{n} players exceeds monotonicity cap {max_players}")
    table = g.table()
    for m in range(1 << n):
        vm = table[m]
        for p in range(n):
            if not (m >> p) & 1:
                if table[m | (1 << p)] < vm:
                    return False
    return True


def is_superadditive(g: GameOracle, max_players: int = 16) -> bool:
    """Exact superadditivity check over all disjoint coalition pairs."""
    n = g.player_count
    if n > max_players:
        raise CapExceededError(f"{n} players exceeds superadditivity cap {max_players}")
    table = g.table()
    full = (1 << n) - 1
    for s in range(1 << n):
        comp = full ^ s
        vs = table[s]
        t = comp
        while t:
            if table[s | t] < vs + table[t]:
                return False
            t = (t - 1) & comp
    return True

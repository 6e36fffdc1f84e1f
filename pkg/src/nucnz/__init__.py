"""Exact nucleolus computation for cooperative games.

The toolkit solves the nucleolus by a successive-fixing LP scheme whose
separation problem (minimum excess over coalitions outside a linear
subspace) is reduced to non-zero-constrained combinatorial optimization.
All arithmetic is exact rational; every fast solver ships with a
brute-force referee usable at desk scale.
"""

from fractions import Fraction

from .linalg import LinearSubspace, integer_kernel_basis, in_span, rank
from .games import (
    GameOracle,
    TableGame,
    excess,
    brute_min_excess,
    brute_nz_min_excess,
    brute_lsa_min_excess,
    is_monotone,
    is_superadditive,
)
from .lp import LPInstance, LPSolution, solve_lp_exact
from .mps import mps_nucleolus, reference_nucleolus, least_core, NucleolusResult
from .graphs import Graph
from .nz import NZInstance, LSAInstance, lsa_to_nz, nz_to_lsa

Rat = Fraction

__all__ = [
    "Rat",
    "LinearSubspace",
    "integer_kernel_basis",
    "in_span",
    "rank",
    "GameOracle",
    "TableGame",
    "Graph",
    "excess",
    "brute_min_excess",
    "brute_nz_min_excess",
    "brute_lsa_min_excess",
    "is_monotone",
    "is_superadditive",
    "LPInstance",
    "LPSolution",
    "solve_lp_exact",
    "mps_nucleolus",
    "reference_nucleolus",
    "least_core",
    "NucleolusResult",
    "NZInstance",
    "LSAInstance",
    "lsa_to_nz",
    "nz_to_lsa",
]

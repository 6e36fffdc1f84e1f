"""Exact rational linear algebra: rank, span membership, integer kernels.

Vectors and matrices are plain sequences of ``fractions.Fraction`` (or ints,
which coerce exactly).  Everything here is dense; the toolkit never needs
ambient dimensions beyond a few dozen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "parse_rat",
    "rat_str",
    "rref",
    "rank",
    "LinearSubspace",
    "in_span",
    "integer_kernel_basis",
    "primitive_int_vector",
]


def parse_rat(s: str | int) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or an int) into an exact rational."""
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


def rat_str(x: Fraction | int) -> str:
    """Render a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _as_row(row: Sequence) -> list[Fraction]:
    return [Fraction(v) for v in row]


def rref(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form over Q, zero rows dropped.

    Pivoting takes the first nonzero entry in each column; with exact
    arithmetic no magnitude heuristics are needed.
    """
    mat = [_as_row(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    for r in mat:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    out: list[list[Fraction]] = []
    pivot_row = 0
    for col in range(ncols):
        piv = None
        for i in range(pivot_row, len(mat)):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[pivot_row], mat[piv] = mat[piv], mat[pivot_row]
        p = mat[pivot_row][col]
        mat[pivot_row] = [v / p for v in mat[pivot_row]]
        for i in range(len(mat)):
            if i != pivot_row and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    for r in mat[:pivot_row]:
        out.append(r)
    return out


def rank(rows: Iterable[Sequence]) -> int:
    """Rank of a rational matrix (list of rows)."""
    return len(rref(rows))


def primitive_int_vector(row: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector.

    Entries are multiplied by the lcm of denominators, divided by their gcd,
    and sign-normalized so the first nonzero entry is positive.
    """
    fracs = _as_row(row)
    lcm = 1
    for v in fracs:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-u for u in ints]
            break
    return tuple(ints)


@dataclass(frozen=True)
class LinearSubspace:
    """A linear subspace of R^n, stored as an RREF basis.

    ``basis_rows`` are linearly independent; ``dim < ambient_dim`` must hold
    whenever the subspace is used as an avoidance constraint.
    """

    ambient_dim: int
    basis_rows: tuple[tuple[Fraction, ...], ...] = field(default=())

    @staticmethod
    def from_rows(rows: Iterable[Sequence], ambient_dim: int) -> "LinearSubspace":
        reduced = rref(list(rows) or [])
        for r in reduced:
            if len(r) != ambient_dim:
                raise ValueError("row length does not match ambient dimension")
        return LinearSubspace(ambient_dim, tuple(tuple(r) for r in reduced))

    @staticmethod
    def zero(ambient_dim: int) -> "LinearSubspace":
        return LinearSubspace(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis_rows)

    def is_proper(self) -> bool:
        return self.dim < self.ambient_dim

    def contains(self, vec: Sequence) -> bool:
        return in_span(self, vec)

    def extended(self, vec: Sequence) -> "LinearSubspace":
        """Subspace spanned by this one plus one more vector."""
        rows = [list(r) for r in self.basis_rows]
        rows.append(_as_row(vec))
        return LinearSubspace.from_rows(rows, self.ambient_dim)


def in_span(L: LinearSubspace, vec: Sequence) -> bool:
    """True iff ``vec`` lies in the span of ``L``'s basis rows.

    Since the basis is kept in RREF, a single reduction pass suffices.
    """
    v = _as_row(vec)
    if len(v) != L.ambient_dim:
        raise ValueError(
            f"dimension mismatch: vector has {len(v)}, subspace ambient {L.ambient_dim}"
        )
    for row in L.basis_rows:
        lead = next(i for i, x in enumerate(row) if x != 0)
        if v[lead] != 0:
            f = v[lead]
            v = [a - f * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)


def integer_kernel_basis(L: LinearSubspace) -> list[tuple[int, ...]]:
    """Canonical integer basis of the orthogonal complement of ``L``.

    Returns ``ambient_dim - dim(L)`` primitive integer vectors a_1..a_k with
    <a_i, b> = 0 for every basis row b; together they cut out exactly L.
    The rows are the RREF basis of the complement, gcd-reduced with positive
    leading entry, so the output is deterministic.
    """
    n = L.ambient_dim
    if not L.is_proper():
        raise ValueError("subspace is the full space; no avoidance possible")
    basis = [list(r) for r in L.basis_rows]
    if not basis:
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    # Null space of the basis matrix: pivot/free split from RREF.
    reduced = rref(basis)
    pivots = []
    for row in reduced:
        pivots.append(next(i for i, x in enumerate(row) if x != 0))
    free = [j for j in range(n) if j not in pivots]
    kernel = []
    for j in free:
        v = [Fraction(0)] * n
        v[j] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[j]
        kernel.append(v)
    canon = rref(kernel)
    return [primitive_int_vector(r) for r in canon]

"""Gadget reductions between degree-capped matching games, non-zero
matchings and non-zero cycles, plus the top-level constrained-excess
solver for those games.

All three reductions use a dominating constant K so that optimal solutions
of the produced instance are forced to respect the gadget structure, and
each ships a map object that pulls solutions back with an exact value
identity.  The toolkit's solver routes a subspace-avoidance query through
the non-zero decomposition and then through one of: the parity-join cycle
solver (polynomial when few vertices have capacity 2, exhaustive
otherwise), the randomized exact-weight matcher (bounded integer data), or
plain brute force.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .exact_matching import exact_weight_perfect_matching, pf_weight_support
from .games import ExcessReport, coalition_sum
from .graphs import Graph
from .linalg import LinearSubspace, integer_kernel_basis, rat_str
from .matching import (
    BMatchingGame,
    PaddedGraph,
    complete_to_perfect,
    max_weight_matching,
    pad_to_perfect,
)
from .cycles import (
    CycleReport,
    NZCycleInstance,
    decompose_into_cycles,
    shortest_nz_cycle_bruteforce,
    shortest_nz_cycle_exhaustive,
    shortest_nz_cycle_few_nonzero,
)

__all__ = [
    "BMatchInstance",
    "NZMatchingInstance",
    "NodeEdgeGadgetMap",
    "MatchingToCycle",
    "SubdivisionMap",
    "reduce_bmatch_to_nzmatching",
    "reduce_nzmatching_to_nzcycle",
    "reduce_nzcycle_to_bmatch",
    "verify_nonzero_promise",
    "nz_matching_randomized",
    "bmatch_nz_min_excess",
    "bmatch_lsa_min_excess",
]


@dataclass(frozen=True)
class BMatchInstance:
    """Degree-capped matching game data plus a per-vertex allocation."""

    graph: Graph
    w: tuple[Fraction, ...]
    b: tuple[int, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        g = self.graph
        if len(self.w) != g.m or len(self.b) != g.n or len(self.y) != g.n:
            raise ValueError("array lengths must match the graph")
        if any(cap not in (1, 2) for cap in self.b):
            raise ValueError("vertex capacities must be 1 or 2")
        if g.has_loops():
            raise ValueError("degree-capped matching games require loop-free graphs")

    def game(self) -> BMatchingGame:
        return BMatchingGame(self.graph, self.w, self.b)

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph.to_json_dict(),
            "w": [rat_str(v) for v in self.w],
            "b": list(self.b),
            "y": [rat_str(v) for v in self.y],
        }


@dataclass(frozen=True)
class NZMatchingInstance:
    graph: Graph
    w: tuple[Fraction, ...]
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.w) != self.graph.m or len(self.a) != self.graph.m:
            raise ValueError("array lengths must match the edge count")
        if all(v == 0 for v in self.a):
            raise ValueError("some edge must carry a nonzero label")

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph.to_json_dict(),
            "w": [rat_str(v) for v in self.w],
            "a": list(self.a),
        }


@dataclass(frozen=True)
class NodeEdgeGadgetMap:
    """Pull-back data for the game-to-matching reduction.

    Vertex v becomes a four-vertex gadget whose center edge carries the
    vertex label; edge e becomes a two-vertex gadget linked to its
    endpoints' capacity slots.  A matching of the produced graph encodes
    the coalition of all vertices whose center edge it picks, and
    w'(M') = K(|V| + |E|) + y(V) + v(S) - y(S) at optimality.
    """

    n: int
    m: int
    K: Fraction
    center_edge: tuple[int, ...]
    offset: Fraction

    def coalition_of(self, matching: Iterable[int]) -> int:
        chosen = set(matching)
        return sum(1 << v for v in range(self.n) if self.center_edge[v] in chosen)

    def implied_excess(self, matching_weight: Fraction) -> Fraction:
        return self.offset - matching_weight

    def to_json_dict(self) -> dict:
        return {
            "kind": "node-edge-gadget",
            "K": rat_str(self.K),
            "center_edge": list(self.center_edge),
            "offset": rat_str(self.offset),
        }


def reduce_bmatch_to_nzmatching(
    inst: BMatchInstance, a: Sequence[int]
) -> tuple[NZMatchingInstance, NodeEdgeGadgetMap]:
    g = inst.graph
    if len(a) != g.n:
        raise ValueError("label vector length must equal the vertex count")
    if all(v == 0 for v in a):
        raise ValueError("some vertex must carry a nonzero label")
    K = 2 * (
        sum(abs(v) for v in inst.w) + 2 * sum(abs(v) for v in inst.y)
    ) + 1
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    labels: list[int] = []
    center_edge = []

    def v1(v):
        return 4 * v

    def vt1(v):
        return 4 * v + 1

    def v2(v):
        return 4 * v + 2

    def vt2(v):
        return 4 * v + 3

    for v in range(g.n):
        half = (K + inst.y[v]) / 2
        edges.append((v1(v), vt1(v)))
        weights.append(half)
        labels.append(0)
        edges.append((v2(v), vt2(v)))
        weights.append(half)
        labels.append(0)
        center_edge.append(len(edges))
        edges.append((vt1(v), vt2(v)))
        weights.append(Fraction(K))
        labels.append(int(a[v]))
    base = 4 * g.n
    for e in range(g.m):
        p, q = g.edges[e]
        pe, qe = base + 2 * e, base + 2 * e + 1
        edges.append((pe, qe))
        weights.append(Fraction(K))
        labels.append(0)
        half = (K + inst.w[e]) / 2
        slots = {0: v1, 1: v2}
        for x, xe in ((p, pe), (q, qe)):
            for i in range(inst.b[x]):
                edges.append((slots[i](x), xe))
                weights.append(half)
                labels.append(0)
    out_graph = Graph(4 * g.n + 2 * g.m, tuple(edges))
    offset = Fraction(K) * (g.n + g.m) + sum(inst.y, Fraction(0))
    gm = NodeEdgeGadgetMap(
        g.n, g.m, Fraction(K), tuple(center_edge), offset
    )
    return NZMatchingInstance(out_graph, tuple(weights), tuple(labels)), gm


@dataclass(frozen=True)
class MatchingToCycle:
    """Either a direct answer (the unconstrained optimum already has a
    nonzero label) or a cycle instance over the padded graph."""

    direct: tuple[int, ...] | None
    instance: NZCycleInstance | None
    padded: PaddedGraph | None
    base_matching: tuple[int, ...] | None

    def back_translate(self, cycle: CycleReport | None) -> tuple[int, ...] | None:
        if self.direct is not None:
            return self.direct
        if cycle is None:
            return None
        flipped = set(self.base_matching) ^ set(cycle.edges)
        return self.padded.strip(flipped)


def reduce_nzmatching_to_nzcycle(inst: NZMatchingInstance) -> MatchingToCycle:
    g = inst.graph
    mbar = max_weight_matching(g, inst.w)
    if sum(inst.a[e] for e in mbar) != 0:
        return MatchingToCycle(tuple(mbar), None, None, None)
    padded = pad_to_perfect(g, inst.w, inst.a)
    perfect = complete_to_perfect(padded, mbar)
    K = 2 * sum(abs(v) for v in padded.w) + 1
    in_bar = set(perfect)
    costs = []
    labels = []
    for e in range(padded.graph.m):
        if e in in_bar:
            costs.append(padded.w[e] - K)
            labels.append(-padded.a[e])
        else:
            costs.append(K - padded.w[e])
            labels.append(padded.a[e])
    cyc = NZCycleInstance(padded.graph, tuple(costs), tuple(labels))
    return MatchingToCycle(None, cyc, padded, perfect)


@dataclass(frozen=True)
class SubdivisionMap:
    """Pull-back data for the cycle-to-game reduction: edge e of the cycle
    instance owns the middle vertex n + e of the produced graph."""

    n: int
    m: int
    K: Fraction

    def cycle_edges_of(self, vertex_mask: int) -> tuple[int, ...]:
        return tuple(e for e in range(self.m) if (vertex_mask >> (self.n + e)) & 1)

    def to_json_dict(self) -> dict:
        return {"kind": "subdivision", "K": rat_str(self.K), "middle_base": self.n}


def reduce_nzcycle_to_bmatch(
    inst: NZCycleInstance,
) -> tuple[BMatchInstance, tuple[int, ...], SubdivisionMap]:
    """Produce the game instance plus the vertex label vector to query."""
    g = inst.graph
    K = 2 * sum(abs(c) for c in inst.costs) + 1
    edges = []
    weights = []
    for e in range(g.m):
        u, v = g.edges[e]
        mid = g.n + e
        edges.append((u, mid))
        weights.append(K - inst.costs[e])
        edges.append((mid, v))
        weights.append(Fraction(K))
    out_graph = Graph(g.n + g.m, tuple(edges))
    b = tuple(2 for _ in range(out_graph.n))
    y = tuple(Fraction(K) for _ in range(out_graph.n))
    labels = tuple([0] * g.n + [int(v) for v in inst.a])
    return (
        BMatchInstance(out_graph, tuple(weights), b, y),
        labels,
        SubdivisionMap(g.n, g.m, Fraction(K)),
    )


def verify_nonzero_promise(
    produced: NZMatchingInstance, b: Sequence[int], center_edge: Sequence[int]
) -> bool:
    """Structural certificate that simple cycles of the produced graph use
    at most #capacity-2-vertices nonzero edges (paths at most two more):
    every nonzero edge of a capacity-1 vertex must be a dead end."""
    g = produced.graph
    deg = [0] * g.n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    for v, cap in enumerate(b):
        e = center_edge[v]
        if produced.a[e] == 0:
            continue
        if cap == 1:
            # one endpoint of the center edge must continue only into a
            # degree-1 slot vertex, so no simple cycle can cross it
            ok = False
            for end in g.edges[e]:
                neighbours = []
                for ee, (x, y) in enumerate(g.edges):
                    if ee == e:
                        continue
                    if x == end:
                        neighbours.append(y)
                    elif y == end:
                        neighbours.append(x)
                if len(neighbours) == 1 and deg[neighbours[0]] == 1:
                    ok = True
            if not ok:
                return False
    return True


def nz_matching_randomized(
    inst: NZMatchingInstance, seed: int, weight_bound: int = 1 << 20
) -> tuple[tuple[int, ...], Fraction]:
    """Best nonzero matching for bounded integer data (randomized, with
    verified output).

    Labels are shifted non-negative and folded into the weights with a
    dominating factor, so each achievable perfect-matching total decodes
    uniquely into a (label sum, weight) pair.  The best feasible total is
    found from the pfaffian support and a witness extracted and verified.
    """
    g = inst.graph
    w = []
    for v in inst.w:
        fv = Fraction(v)
        if fv.denominator != 1:
            raise ValueError("randomized solver needs integer weights")
        w.append(int(fv))
    if any(abs(v) > weight_bound for v in w) or any(
        abs(v) > weight_bound for v in inst.a
    ):
        raise ValueError("weights exceed the configured bound")
    padded = pad_to_perfect(g, [Fraction(v) for v in w], inst.a)
    pg = padded.graph
    half = pg.n // 2
    wp = [int(v) for v in padded.w]
    ap = list(padded.a)
    L = 2 * sum(abs(v) for v in wp) + 1
    a0 = max(0, -min(ap))
    t0 = a0 * half
    folded = [wp[e] + L * (ap[e] + a0) for e in range(pg.m)]
    shift = max(0, -min(folded))
    shifted = [v + shift for v in folded]
    rng = random.Random(seed)
    scalars = [rng.randrange(1, 1 << 61) for _ in range(pg.m)]
    coeffs = pf_weight_support(pg, shifted, scalars)
    candidates = []
    for r, c in enumerate(coeffs):
        if c == 0:
            continue
        r0 = r - shift * half
        u = ((r0 % L) + L) % L
        if u > L // 2:
            u -= L
        s = (r0 - u) // L
        if s != t0:
            candidates.append((u, r0))
    candidates.sort(key=lambda t: (-t[0], t[1]))
    for u, r0 in candidates:
        m = exact_weight_perfect_matching(pg, folded, r0, seed=rng.randrange(1 << 30))
        if m is None:
            continue
        got = padded.strip(m)
        label = sum(inst.a[e] for e in got)
        weight = sum(w[e] for e in got)
        if label != 0 and weight == u:
            return got, Fraction(weight)
    raise RuntimeError("randomized matching failed on every candidate total")


def _nz_matching_exact(
    inst: NZMatchingInstance, guess_cap: int | None
) -> tuple[int, ...] | None:
    """Best nonzero matching through the cycle route (None if none exists)."""
    red = reduce_nzmatching_to_nzcycle(inst)
    if red.direct is not None:
        return red.direct
    if guess_cap is None:
        cyc = shortest_nz_cycle_exhaustive(red.instance)
    else:
        cyc = shortest_nz_cycle_few_nonzero(red.instance, guess_cap)
    return red.back_translate(cyc)


def bmatch_nz_min_excess(
    inst: BMatchInstance,
    a: Sequence[int],
    strategy: str = "auto",
    seed: int = 0,
    few2_threshold: int = 4,
) -> ExcessReport:
    """Minimum excess over coalitions with a(S) != 0 for the matching game.

    Strategies: "few2" (parity-join cycles with the promise bound),
    "exhaustive" (parity-join cycles, all guesses), "randomized" (bounded
    integer weights), "brute" (coalition enumeration), "auto".

    The randomized route folds the gadget weights, whose dominating
    constant squares through the reduction; its work-budget guard
    therefore rejects all but trivial game instances, so "auto" never
    selects it (the route is validated directly on matching instances).
    """
    g = inst.graph
    if strategy == "auto":
        if sum(1 for cap in inst.b if cap == 2) <= few2_threshold:
            strategy = "few2"
        elif g.m <= 12:
            strategy = "exhaustive"
        else:
            strategy = "brute"

    if strategy == "brute":
        from .games import brute_nz_min_excess

        return brute_nz_min_excess(inst.game(), inst.y, a)

    produced, gm = reduce_bmatch_to_nzmatching(inst, a)
    if strategy in ("few2", "exhaustive"):
        cap = None
        if strategy == "few2":
            cap = sum(1 for v in inst.b if v == 2) + 2
        matching = _nz_matching_exact(produced, cap)
        if matching is None:
            raise RuntimeError("gadget instance lost its nonzero matchings")
    elif strategy == "randomized":
        den = 1
        for v in produced.w:
            den = den * v.denominator // gcd(den, v.denominator)
        scaled = NZMatchingInstance(
            produced.graph, tuple(v * den for v in produced.w), produced.a
        )
        matching, _ = nz_matching_randomized(scaled, seed)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    mask = gm.coalition_of(matching)
    game = inst.game()
    ex = coalition_sum(inst.y, mask) - game.value(mask)
    return ExcessReport(mask, ex)


def bmatch_lsa_min_excess(
    inst: BMatchInstance,
    L: LinearSubspace,
    strategy: str = "auto",
    seed: int = 0,
) -> ExcessReport:
    """Minimum excess over coalitions avoiding ``L``: decompose into one
    non-zero query per kernel vector and keep the best."""
    best: ExcessReport | None = None
    for a in integer_kernel_basis(L):
        rep = bmatch_nz_min_excess(inst, a, strategy=strategy, seed=seed)
        if best is None or (rep.excess, rep.coalition) < (best.excess, best.coalition):
            best = rep
    return best

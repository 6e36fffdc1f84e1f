"""Exact matching machinery: maximum weight matchings, degree-2-capped
matching values, perfect-matching padding and minimum-cost T-joins.

Matchings are edge-id sets over :class:`~nucnz.graphs.Graph`, so parallel
edges stay distinguishable.  Small instances are solved by direct
enumeration; larger ones go through the blossom implementation of
networkx, fed with exact rationals (its arithmetic stays in Q), after
collapsing parallels and dropping loops and negative edges, none of which
can improve a maximum-weight matching.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import networkx as nx

from .games import GameOracle
from .graphs import Graph

__all__ = [
    "matching_is_valid",
    "max_weight_matching",
    "max_weight_perfect_matching",
    "b_matching_value",
    "BMatchingGame",
    "PaddedGraph",
    "pad_to_perfect",
    "complete_to_perfect",
    "min_cost_t_join",
    "t_join_exists",
    "is_conservative",
]

BRUTE_EDGE_LIMIT = 12


def matching_is_valid(g: Graph, edge_ids: Iterable[int]) -> bool:
    used = set()
    for e in edge_ids:
        u, v = g.edges[e]
        if u == v or u in used or v in used:
            return False
        used.add(u)
        used.add(v)
    return True


def _matching_weight(w: Sequence[Fraction], edge_ids: Iterable[int]) -> Fraction:
    return sum((Fraction(w[e]) for e in edge_ids), Fraction(0))


def _brute_max_matching(g: Graph, w: Sequence[Fraction]) -> tuple[int, ...]:
    best_wt = Fraction(0)
    best: tuple[int, ...] = ()

    def rec(idx: int, used: set[int], picked: list[int], wt: Fraction):
        nonlocal best_wt, best
        key = tuple(picked)
        if wt > best_wt or (wt == best_wt and key < best):
            best_wt, best = wt, key
        for e in range(idx, g.m):
            u, v = g.edges[e]
            if u == v or u in used or v in used:
                continue
            used.add(u)
            used.add(v)
            picked.append(e)
            rec(e + 1, used, picked, wt + Fraction(w[e]))
            picked.pop()
            used.discard(u)
            used.discard(v)

    rec(0, set(), [], Fraction(0))
    return best


def _collapse_for_blossom(g: Graph, w: Sequence[Fraction], keep_negative: bool):
    """Best representative per vertex pair; loops dropped."""
    rep: dict[tuple[int, int], int] = {}
    for e in range(g.m):
        u, v = g.edges[e]
        if u == v:
            continue
        if not keep_negative and Fraction(w[e]) < 0:
            continue
        key = (min(u, v), max(u, v))
        old = rep.get(key)
        if old is None or (Fraction(w[e]), -e) > (Fraction(w[old]), -old):
            rep[key] = e
    return rep


def max_weight_matching(g: Graph, w: Sequence[Fraction]) -> tuple[int, ...]:
    """Exact maximum-weight matching as a sorted tuple of edge ids.

    The empty matching (weight 0) always competes, so negative edges are
    never used.
    """
    if g.m <= BRUTE_EDGE_LIMIT:
        return _brute_max_matching(g, w)
    rep = _collapse_for_blossom(g, w, keep_negative=False)
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    for (u, v), e in rep.items():
        G.add_edge(u, v, weight=Fraction(w[e]), eid=e)
    mate = nx.max_weight_matching(G)
    return tuple(sorted(G[u][v]["eid"] for u, v in mate))


def max_weight_perfect_matching(
    g: Graph, w: Sequence[Fraction]
) -> tuple[int, ...] | None:
    """Maximum-weight perfect matching, or None if no perfect matching."""
    if g.n % 2:
        return None
    rep = _collapse_for_blossom(g, w, keep_negative=True)
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    for (u, v), e in rep.items():
        G.add_edge(u, v, weight=Fraction(w[e]), eid=e)
    mate = nx.max_weight_matching(G, maxcardinality=True)
    if 2 * len(mate) != g.n:
        return None
    return tuple(sorted(G[u][v]["eid"] for u, v in mate))


def b_matching_value(
    g: Graph, w: Sequence[Fraction], b: Sequence[int], vertex_mask: int = -1
) -> Fraction:
    """Maximum weight of a degree-capped edge subset inside G[S], b <= 2.

    Realized by vertex splitting: each capacity-2 vertex gets two copies
    and each edge becomes a three-edge chain carrying half its weight on
    every link, so a matching collects the full weight exactly when it
    commits both endpoints.  Negative edges never help and are dropped.
    """
    if vertex_mask < 0:
        vertex_mask = (1 << g.n) - 1
    for v in range(g.n):
        if b[v] not in (1, 2):
            raise ValueError("vertex capacities must be 1 or 2")
    if g.has_loops():
        raise ValueError("degree-capped matching games require loop-free graphs")

    copies: dict[int, list[int]] = {}
    nxt = 0
    for v in range(g.n):
        if (vertex_mask >> v) & 1:
            copies[v] = [nxt + i for i in range(b[v])]
            nxt += b[v]
    kept = [
        e
        for e in range(g.m)
        if Fraction(w[e]) >= 0
        and (vertex_mask >> g.edges[e][0]) & 1
        and (vertex_mask >> g.edges[e][1]) & 1
    ]
    edges = []
    weights: list[Fraction] = []
    total = Fraction(0)
    for e in kept:
        u, v = g.edges[e]
        we = Fraction(w[e])
        total += we
        eu, ev = nxt, nxt + 1
        nxt += 2
        for cu in copies[u]:
            edges.append((cu, eu))
            weights.append(we / 2)
        edges.append((eu, ev))
        weights.append(we / 2)
        for cv in copies[v]:
            edges.append((ev, cv))
            weights.append(we / 2)
    if not edges:
        return Fraction(0)
    expanded = Graph(nxt, tuple(edges))
    best = max_weight_matching(expanded, weights)
    return 2 * _matching_weight(weights, best) - total


class BMatchingGame(GameOracle):
    """Value game over vertices: v(S) = best capped matching inside G[S]."""

    kind = "value"

    def __init__(self, g: Graph, w: Sequence[Fraction], b: Sequence[int]):
        if g.has_loops():
            raise ValueError("degree-capped matching games require loop-free graphs")
        super().__init__(g.n)
        self.graph = g
        self.w = tuple(Fraction(v) for v in w)
        self.b = tuple(int(v) for v in b)
        for cap in self.b:
            if cap not in (1, 2):
                raise ValueError("vertex capacities must be 1 or 2")

    def value(self, mask: int) -> Fraction:
        return b_matching_value(self.graph, self.w, self.b, mask)


@dataclass(frozen=True)
class PaddedGraph:
    """Graph extended so every matching completes to a perfect one.

    One extra vertex is added when the count is odd, then a zero-weight
    zero-label edge is added for *every* vertex pair (parallel to existing
    edges): completing a matching never changes its weight or label sum.
    """

    graph: Graph
    w: tuple[Fraction, ...]
    a: tuple[int, ...]
    original_edges: int
    trivial_of_pair: dict[tuple[int, int], int]

    def is_trivial(self, e: int) -> bool:
        return e >= self.original_edges

    def strip(self, edge_ids: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(e for e in edge_ids if e < self.original_edges))


def pad_to_perfect(g: Graph, w: Sequence[Fraction], a: Sequence[int]) -> PaddedGraph:
    n = g.n + (g.n % 2)
    edges = list(g.edges)
    weights = [Fraction(v) for v in w]
    labels = [int(v) for v in a]
    m0 = len(edges)
    trivial: dict[tuple[int, int], int] = {}
    for u in range(n):
        for v in range(u + 1, n):
            trivial[(u, v)] = len(edges)
            edges.append((u, v))
            weights.append(Fraction(0))
            labels.append(0)
    return PaddedGraph(
        Graph(n, tuple(edges)), tuple(weights), tuple(labels), m0, trivial
    )


def complete_to_perfect(p: PaddedGraph, matching: Iterable[int]) -> tuple[int, ...]:
    """Extend a matching to a perfect one using trivial edges only."""
    chosen = set(matching)
    used = set()
    for e in chosen:
        u, v = p.graph.edges[e]
        used.add(u)
        used.add(v)
    rest = sorted(v for v in range(p.graph.n) if v not in used)
    for u, v in zip(rest[0::2], rest[1::2]):
        chosen.add(p.trivial_of_pair[(u, v)])
    return tuple(sorted(chosen))


def _components(g: Graph) -> list[int]:
    comp = list(range(g.n))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            comp[ru] = rv
    return [find(x) for x in range(g.n)]


def t_join_exists(g: Graph, T: Iterable[int]) -> bool:
    comp = _components(g)
    counts: dict[int, int] = {}
    for t in T:
        counts[comp[t]] = counts.get(comp[t], 0) + 1
    return all(c % 2 == 0 for c in counts.values())


def _dijkstra(g: Graph, dist_w: Sequence[int], source: int):
    INF = None
    dist: list[int | None] = [INF] * g.n
    prev_edge: list[int] = [-1] * g.n
    dist[source] = 0
    heap = [(0, source)]
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            continue
        adj[u].append((v, dist_w[e], e))
        adj[v].append((u, dist_w[e], e))
    while heap:
        d, x = heapq.heappop(heap)
        if dist[x] != d:
            continue
        for (y, wt, e) in adj[x]:
            nd = d + wt
            if dist[y] is None or nd < dist[y]:
                dist[y] = nd
                prev_edge[y] = e
                heapq.heappush(heap, (nd, y))
    return dist, prev_edge


def min_cost_t_join(g: Graph, costs: Sequence[Fraction], T: Iterable[int]) -> tuple[int, ...]:
    """Exact minimum-cost T-join under arbitrary (possibly negative) costs.

    Negative edges are flipped into the target parity, the non-negative
    instance is solved by shortest-path metric completion plus a
    minimum-weight perfect matching, and the flip is undone by symmetric
    difference.  Raises ValueError when no T-join exists.
    """
    T = sorted(set(T))
    if len(T) % 2:
        raise ValueError("T must have even size")
    for t in T:
        if not 0 <= t < g.n:
            raise ValueError("T vertex out of range")
    if not t_join_exists(g, T):
        raise ValueError("no T-join exists: odd T count in some component")

    cf = [Fraction(c) for c in costs]
    negative = [e for e in range(g.m) if cf[e] < 0]
    deg = [0] * g.n
    for e in negative:
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    t_prime = set(T)
    for v in range(g.n):
        if deg[v] % 2:
            t_prime ^= {v}
    tp = sorted(t_prime)

    join: set[int] = set()
    if tp:
        # integer-scaled absolute costs for the shortest-path phase
        den = 1
        for c in cf:
            den = den * c.denominator // gcd(den, c.denominator)
        dist_w = [abs(int(c * den)) for c in cf]
        dists = {}
        prevs = {}
        for s in tp:
            d, pe = _dijkstra(g, dist_w, s)
            dists[s] = d
            prevs[s] = pe
        K = nx.Graph()
        K.add_nodes_from(tp)
        for i, u in enumerate(tp):
            for v in tp[i + 1:]:
                if dists[u][v] is not None:
                    K.add_edge(u, v, weight=dists[u][v])
        mate = nx.min_weight_matching(K)
        if 2 * len(mate) != len(tp):
            raise ValueError("no T-join exists: targets not pairable")
        for u, v in mate:
            # walk the shortest path back from v to u
            cur = v
            while cur != u:
                e = prevs[u][cur]
                join ^= {e}
                x, y = g.edges[e]
                cur = x if y == cur else y
    for e in negative:
        join ^= {e}

    # structural check: the odd-degree set must be exactly T
    deg2 = [0] * g.n
    for e in join:
        u, v = g.edges[e]
        deg2[u] += 1
        deg2[v] += 1
    odd = sorted(v for v in range(g.n) if deg2[v] % 2)
    if odd != T:
        raise AssertionError("T-join construction produced the wrong parity set")
    return tuple(sorted(join))


def is_conservative(g: Graph, costs: Sequence[Fraction]) -> bool:
    """No negative-cost cycle: the cheapest empty-parity join costs zero."""
    join = min_cost_t_join(g, costs, [])
    return sum((Fraction(costs[e]) for e in join), Fraction(0)) >= 0

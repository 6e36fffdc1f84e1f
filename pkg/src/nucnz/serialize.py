"""JSON file formats: games, allocations, avoided subspaces.

A game file is {"kind": "value"|"cost", "players": [names...], "game":
{...}} where the inner object carries a "type" of table, bmatching,
arboricity, network_strength or packing plus its payload.  Rationals are
strings "p/q" (or "p"); graphs are {"n": ..., "edges": [[u, v], ...]}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .bmatch import BMatchInstance
from .fixtures import PackingGame
from .games import GameOracle, TableGame, coalition_of, make_allocation
from .graphs import Graph
from .linalg import LinearSubspace, parse_rat, rat_str
from .matching import BMatchingGame
from .matroids import ArboricityGame, NetworkStrengthGame

__all__ = [
    "GameFileError",
    "LoadedGame",
    "load_game_dict",
    "dump_table_game",
    "load_allocation_dict",
    "dump_allocation",
    "load_subspace_dict",
]


class GameFileError(ValueError):
    """Malformed game/allocation/subspace file."""


class LoadedGame:
    def __init__(self, game: GameOracle, players: list[str], gtype: str, payload: dict):
        self.game = game
        self.players = players
        self.type = gtype
        self.payload = payload


def _require(cond: bool, msg: str):
    if not cond:
        raise GameFileError(msg)


def load_game_dict(d: dict) -> LoadedGame:
    _require(isinstance(d, dict), "game file must be a JSON object")
    kind = d.get("kind")
    _require(kind in ("value", "cost"), 'kind must be "value" or "cost"')
    players = d.get("players")
    _require(isinstance(players, list) and players, "players must be a non-empty list")
    spec = d.get("game")
    _require(isinstance(spec, dict), "game payload missing")
    gtype = spec.get("type")
    n = len(players)

    if gtype == "table":
        values = spec.get("values")
        _require(isinstance(values, list), "table game needs a values list")
        _require(len(values) == 1 << n, "table must list all 2^n coalition values")
        game: GameOracle = TableGame([parse_rat(v) for v in values], kind=kind)
    elif gtype == "bmatching":
        graph = Graph.from_json_dict(spec["graph"])
        _require(graph.n == n, "players must match the vertex count")
        w = [parse_rat(v) for v in spec["w"]]
        b = [int(v) for v in spec["b"]]
        _require(kind == "value", "degree-capped matching games are value games")
        game = BMatchingGame(graph, w, b)
    elif gtype == "arboricity":
        graph = Graph.from_json_dict(spec["graph"])
        _require(graph.m == n, "players must match the edge count")
        _require(kind == "cost", "forest-cover games are cost games")
        game = ArboricityGame(graph)
    elif gtype == "network_strength":
        graph = Graph.from_json_dict(spec["graph"])
        _require(graph.m == n, "players must match the edge count")
        _require(kind == "value", "spanning-tree-packing games are value games")
        game = NetworkStrengthGame(graph)
    elif gtype == "packing":
        sets = spec.get("sets")
        _require(isinstance(sets, list) and sets, "packing game needs sets")
        parsed = []
        for s in sets:
            members = s["members"]
            _require(all(0 <= int(p) < n for p in members), "set member out of range")
            parsed.append((coalition_of(int(p) for p in members), parse_rat(s["weight"])))
        _require(kind == "value", "packing games are value games")
        game = PackingGame(n, parsed)
    else:
        raise GameFileError(f"unknown game type {gtype!r}")
    return LoadedGame(game, [str(p) for p in players], gtype, spec)


def dump_table_game(game: GameOracle, players: Sequence[str] | None = None) -> dict:
    n = game.player_count
    names = list(players) if players else [f"p{i}" for i in range(n)]
    return {
        "kind": game.kind,
        "players": names,
        "game": {"type": "table", "values": [rat_str(v) for v in game.table()]},
    }


def load_allocation_dict(d: dict, n: int):
    _require(isinstance(d, dict) and "y" in d, 'allocation file needs a "y" list')
    y = d["y"]
    _require(isinstance(y, list) and len(y) == n, f"allocation must have {n} entries")
    return make_allocation(parse_rat(v) for v in y)


def dump_allocation(y) -> dict:
    return {"y": [rat_str(v) for v in y]}


def load_subspace_dict(d: dict, n: int) -> LinearSubspace:
    _require(isinstance(d, dict) and "basis" in d, 'subspace file needs a "basis" list')
    rows = d["basis"]
    for row in rows:
        _require(len(row) == n, f"basis rows must have {n} entries")
    L = LinearSubspace.from_rows(
        [[parse_rat(v) for v in row] for row in rows], n
    )
    _require(L.is_proper(), "avoided subspace must be a proper subspace")
    return L

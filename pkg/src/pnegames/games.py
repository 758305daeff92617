"""Game kinds, their costs and exact potentials, and PNE checks.

Three kinds are supported:

* ``DpgParam``   -- discrete preference game with a parameter alpha,
* ``DpgPenalty`` -- discrete preference game with penalties and edge weights,
* ``Ncg``        -- network coordination game with one cost table per edge.

All values are ``Fraction`` so cost and potential comparisons are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .core import PlayerGraph, Profile, as_rational
from .metric import FiniteMetric

ZERO = Fraction(0)


@dataclass(frozen=True)
class DpgParam:
    graph: PlayerGraph
    metric: FiniteMetric
    beta: Tuple[int, ...]
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        if self.graph.weighted:
            raise ValueError("a parameter game lives on an unweighted graph")
        if len(self.beta) != self.graph.n:
            raise ValueError(f"beta has {len(self.beta)} entries for {self.graph.n} players")
        m = self.metric.point_count
        for i, b in enumerate(self.beta):
            if not 0 <= b < m:
                raise ValueError(f"beta[{i}] = {b} is not a point of the {m}-point metric")
        if not 0 <= self.alpha < 1:
            raise ValueError(f"alpha must satisfy 0 <= alpha < 1, got {self.alpha}")


@dataclass(frozen=True)
class DpgPenalty:
    graph: PlayerGraph
    metric: FiniteMetric
    penalties: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        table = tuple(tuple(as_rational(v) for v in row) for row in self.penalties)
        object.__setattr__(self, "penalties", table)
        if len(table) != self.graph.n:
            raise ValueError(f"penalty table has {len(table)} rows for {self.graph.n} players")
        m = self.metric.point_count
        for i, row in enumerate(table):
            if len(row) != m:
                raise ValueError(f"penalties[{i}] has {len(row)} entries, metric has {m} points")
            for s, v in enumerate(row):
                if v < 0:
                    raise ValueError(f"penalties[{i}][{s}] = {v} is negative")


@dataclass(frozen=True)
class Ncg:
    """Network coordination game.

    ``tables[k][a][b]`` is the cost on edge ``graph.edges[k] = (i, j)`` (with
    ``i < j``) when ``i`` plays ``a`` and ``j`` plays ``b``.  The endpoint
    ``j`` reads the same table transposed.
    """

    graph: PlayerGraph
    strategy_counts: Tuple[int, ...]
    tables: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.strategy_counts)
        object.__setattr__(self, "strategy_counts", counts)
        tables = tuple(
            tuple(tuple(as_rational(v) for v in row) for row in table) for table in self.tables
        )
        object.__setattr__(self, "tables", tables)
        if len(counts) != self.graph.n:
            raise ValueError(f"{len(counts)} strategy counts for {self.graph.n} players")
        if any(c < 1 for c in counts):
            raise ValueError("every player needs at least one strategy")
        if len(tables) != len(self.graph.edges):
            raise ValueError(f"{len(tables)} cost tables for {len(self.graph.edges)} edges")
        for k, ((i, j), table) in enumerate(zip(self.graph.edges, tables)):
            if len(table) != counts[i] or any(len(row) != counts[j] for row in table):
                raise ValueError(f"table for edge {(i, j)} must be {counts[i]}x{counts[j]}")
            if any(v < 0 for row in table for v in row):
                raise ValueError(f"table for edge {(i, j)} has a negative cost")

    def edge_cost(self, k: int, i: int, xi: int, xj: int) -> Fraction:
        """``C_{i,j}(x_i, x_j)`` on edge ``k`` seen from endpoint ``i``."""
        lo, _ = self.graph.edges[k]
        return self.tables[k][xi][xj] if i == lo else self.tables[k][xj][xi]


Game = Union[DpgParam, DpgPenalty, Ncg]


@dataclass(frozen=True)
class Deviation:
    player: int
    from_strategy: int
    to_strategy: int
    old_cost: Fraction
    new_cost: Fraction


def strategy_counts(game: Game) -> Tuple[int, ...]:
    if isinstance(game, Ncg):
        return game.strategy_counts
    return (game.metric.point_count,) * game.graph.n


def profile_count(game: Game) -> int:
    total = 1
    for c in strategy_counts(game):
        total *= c
    return total


def check_profile(game: Game, x: Sequence[int]) -> Profile:
    counts = strategy_counts(game)
    x = tuple(int(v) for v in x)
    if len(x) != len(counts):
        raise ValueError(f"profile has {len(x)} entries for {len(counts)} players")
    for i, (v, c) in enumerate(zip(x, counts)):
        if not 0 <= v < c:
            raise ValueError(f"strategy {v} of player {i} outside [0, {c})")
    return x


def _check_player(game: Game, i: int) -> None:
    if not 0 <= i < game.graph.n:
        raise ValueError(f"player {i} outside [0, {game.graph.n})")


def player_cost(game: Game, x: Sequence[int], i: int) -> Fraction:
    _check_player(game, i)
    g = game.graph
    if isinstance(game, DpgParam):
        d = game.metric.dist[x[i]]
        social = sum((d[x[j]] for j, _ in g.adjacency[i]), ZERO)
        return game.alpha * d[game.beta[i]] + (1 - game.alpha) * social
    if isinstance(game, DpgPenalty):
        d = game.metric.dist[x[i]]
        own = sum((p * d[s] for s, p in enumerate(game.penalties[i])), ZERO)
        social = sum((g.edge_weight(k) * d[x[j]] for j, k in g.adjacency[i]), ZERO)
        return own + social
    return sum((game.edge_cost(k, i, x[i], x[j]) for j, k in g.adjacency[i]), ZERO)


def potential(game: Game, x: Sequence[int]) -> Fraction:
    g = game.graph
    d = getattr(game, "metric", None)
    if isinstance(game, DpgParam):
        pref = sum((d.dist[x[i]][game.beta[i]] for i in range(g.n)), ZERO)
        social = sum((d.dist[x[i]][x[j]] for i, j in g.edges), ZERO)
        return game.alpha * pref + (1 - game.alpha) * social
    if isinstance(game, DpgPenalty):
        own = sum(
            (p * d.dist[s][x[i]] for i in range(g.n) for s, p in enumerate(game.penalties[i])),
            ZERO,
        )
        social = sum(
            (g.edge_weight(k) * d.dist[x[i]][x[j]] for k, (i, j) in enumerate(g.edges)), ZERO
        )
        return own + social
    return sum((game.tables[k][x[i]][x[j]] for k, (i, j) in enumerate(g.edges)), ZERO)


def _costs_for_player(game: Game, x: Sequence[int], i: int) -> List[Fraction]:
    y = list(x)
    out = []
    for s in range(strategy_counts(game)[i]):
        y[i] = s
        out.append(player_cost(game, y, i))
    return out


def best_response(game: Game, x: Sequence[int], i: int) -> int:
    """Cost-minimizing strategy of player ``i``; ties go to the lowest index."""
    _check_player(game, i)
    costs = _costs_for_player(game, x, i)
    return min(range(len(costs)), key=costs.__getitem__)


def find_deviation(game: Game, x: Sequence[int]) -> Optional[Deviation]:
    """First strictly improving unilateral move, or ``None`` at a PNE.

    Scans players in index order and, for the first player that can
    improve, returns her lowest-indexed improving strategy.
    """
    x = check_profile(game, x)
    for i in range(game.graph.n):
        costs = _costs_for_player(game, x, i)
        current = costs[x[i]]
        for s, c in enumerate(costs):
            if c < current:
                return Deviation(i, x[i], s, current, c)
    return None


def is_pne(game: Game, x: Sequence[int]) -> bool:
    return find_deviation(game, x) is None


def local_tables(game: Game):
    """Decompose costs into per-player unary terms and per-edge pair terms.

    Returns ``(unary, pair)`` where ``unary[i][s]`` is the part of player
    ``i``'s cost depending only on her own strategy and ``pair[k][a][b]``
    is the term for edge ``k = (i, j)`` with ``i`` at ``a`` and ``j`` at
    ``b``.  For every kind, ``cost_i(x) = unary[i][x_i] + sum of incident
    pair terms`` and the potential is ``sum unary + sum pair``.
    """
    g = game.graph
    if isinstance(game, Ncg):
        unary = [[ZERO] * c for c in game.strategy_counts]
        return unary, [[list(row) for row in t] for t in game.tables]
    dist = game.metric.dist
    m = game.metric.point_count
    if isinstance(game, DpgParam):
        a = game.alpha
        unary = [[a * dist[s][game.beta[i]] for s in range(m)] for i in range(g.n)]
        scaled = [[(1 - a) * dist[s][t] for t in range(m)] for s in range(m)]
        return unary, [scaled for _ in g.edges]
    unary = [
        [sum((p * dist[s][u] for u, p in enumerate(game.penalties[i])), ZERO) for s in range(m)]
        for i in range(g.n)
    ]
    pair = []
    for k in range(len(g.edges)):
        w = g.edge_weight(k)
        pair.append([[w * dist[s][t] for t in range(m)] for s in range(m)])
    return unary, pair


def param_to_penalty(game: DpgParam) -> DpgPenalty:
    """Re-express a parameter game with penalties: ``p_i(beta_i) = alpha``, weights ``1 - alpha``.

    Player costs are identical, not merely shifted.
    """
    m = game.metric.point_count
    penalties = [
        [game.alpha if s == game.beta[i] else ZERO for s in range(m)] for i in range(game.graph.n)
    ]
    graph = PlayerGraph(
        game.graph.n, game.graph.edges, [1 - game.alpha] * len(game.graph.edges)
    )
    return DpgPenalty(graph, game.metric, penalties)

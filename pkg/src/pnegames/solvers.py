"""Exact PNE solvers: exhaustive oracle, path DP and the two-strategy sweep."""
from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from .core import Profile
from .games import DpgPenalty, Game, is_pne, local_tables, profile_count, strategy_counts

PneSet = Tuple[Profile, ...]

DEFAULT_CAP = 2**20
BLOCK = 1 << 15


class ProfileCapExceeded(ValueError):
    pass


def default_cap() -> int:
    return int(os.environ.get("PNEGAMES_CAP", DEFAULT_CAP))


def _check_cap(game: Game, cap) -> int:
    cap = default_cap() if cap is None else cap
    total = profile_count(game)
    if total > cap:
        raise ProfileCapExceeded(f"game has {total} profiles, above the cap of {cap}")
    return total


class _IntTables:
    """``local_tables`` scaled by a common denominator to exact integers."""

    def __init__(self, game: Game):
        unary, pair = local_tables(game)
        values = [v for row in unary for v in row] + [v for t in pair for r in t for v in r]
        den = 1
        for v in values:
            den = math.lcm(den, v.denominator)
        biggest = max((abs(v) for v in values), default=Fraction(0)) * den
        g = game.graph
        reach = (g.n + len(g.edges) + 1) * (biggest + 1)
        self.dtype = np.int64 if reach < 2**62 else object

        def conv(rows):
            return np.array(
                [[int(v * den) for v in r] for r in rows], dtype=self.dtype
            )

        self.unary = [conv([row])[0] for row in unary]
        self.pair = [conv(t) for t in pair]
        self.counts = np.array(strategy_counts(game), dtype=np.int64)
        self.game = game

    def profiles(self, start: int, stop: int) -> np.ndarray:
        counts = self.counts
        strides = np.ones_like(counts)
        for i in range(len(counts) - 2, -1, -1):
            strides[i] = strides[i + 1] * counts[i + 1]
        ks = np.arange(start, stop, dtype=np.int64)
        return (ks[:, None] // strides[None, :]) % counts[None, :]

    def pne_mask(self, P: np.ndarray) -> np.ndarray:
        g = self.game.graph
        rows = np.arange(len(P))
        ok = np.ones(len(P), dtype=bool)
        for i in range(g.n):
            costs = np.broadcast_to(self.unary[i], (len(P), len(self.unary[i]))).copy()
            for j, k in g.adjacency[i]:
                table = self.pair[k]
                costs += table[:, P[:, j]].T if i < j else table[P[:, j], :]
            current = costs[rows, P[:, i]]
            ok &= current <= costs.min(axis=1)
        return ok

    def potentials(self, P: np.ndarray) -> np.ndarray:
        g = self.game.graph
        total = np.zeros(len(P), dtype=self.dtype)
        for i in range(g.n):
            total += self.unary[i][P[:, i]]
        for k, (i, j) in enumerate(g.edges):
            total += self.pair[k][P[:, i], P[:, j]]
        return total


def brute_force_pne_set(game: Game, cap=None) -> PneSet:
    """Every PNE of ``game`` in lexicographic order, by exhaustive enumeration."""
    total = _check_cap(game, cap)
    tables = _IntTables(game)
    found: List[Profile] = []
    for start in range(0, total, BLOCK):
        P = tables.profiles(start, min(total, start + BLOCK))
        for row in P[tables.pne_mask(P)]:
            found.append(tuple(int(v) for v in row))
    return tuple(found)


def minimize_potential_bruteforce(game: Game, cap=None) -> Profile:
    """Lexicographically smallest global minimizer of the exact potential."""
    total = _check_cap(game, cap)
    tables = _IntTables(game)
    best_value, best = None, None
    for start in range(0, total, BLOCK):
        P = tables.profiles(start, min(total, start + BLOCK))
        phi = tables.potentials(P)
        k = int(np.argmin(phi))
        if best_value is None or phi[k] < best_value:
            best_value, best = phi[k], tuple(int(v) for v in P[k])
    return best


def solve_path_dp(game: Game) -> Profile:
    """Global potential minimizer on a path player graph by forward DP.

    ``f_k(s) = unary_k(s) + min_{s'} [f_{k-1}(s') + pair(s', s)]`` along the
    path, then backtrack.  Every argmin takes the lowest strategy index.
    """
    order = game.graph.path_order()
    if order is None:
        raise ValueError("solve_path_dp needs the player graph to be a simple path")
    unary, pair = local_tables(game)
    g = game.graph
    f = list(unary[order[0]])
    back = []
    for prev, cur in zip(order, order[1:]):
        k = g.edge_ids[(min(prev, cur), max(prev, cur))]
        table = pair[k]

        def edge(a, b):
            # a: strategy of prev, b: strategy of cur
            return table[a][b] if prev < cur else table[b][a]

        new_f, ptr = [], []
        for s in range(len(unary[cur])):
            cands = [f[a] + edge(a, s) for a in range(len(f))]
            a_best = min(range(len(cands)), key=cands.__getitem__)
            new_f.append(unary[cur][s] + cands[a_best])
            ptr.append(a_best)
        f = new_f
        back.append(ptr)
    s = min(range(len(f)), key=f.__getitem__)
    x = [0] * g.n
    x[order[-1]] = s
    for pos in range(len(order) - 1, 0, -1):
        s = back[pos - 1][s]
        x[order[pos - 1]] = s
    out = tuple(x)
    if not is_pne(game, out):
        raise RuntimeError("path DP output is not a PNE")
    return out


def solve_two_strategy(game: DpgPenalty) -> Tuple[Profile, int]:
    """PNE of a two-point-metric penalty game by round-robin best responses.

    Starts from the all-0 profile and sweeps players in index order until a
    full sweep makes no move.  Returns the profile and the number of moves.
    """
    if not isinstance(game, DpgPenalty):
        raise TypeError("solve_two_strategy takes a DpgPenalty game")
    if game.metric.point_count != 2:
        raise ValueError(f"metric has {game.metric.point_count} points, expected 2")
    unary, pair = local_tables(game)
    g = game.graph
    x = [0] * g.n
    moves = 0
    changed = True
    while changed:
        changed = False
        for i in range(g.n):
            cost = list(unary[i])
            for j, k in g.adjacency[i]:
                t = pair[k]
                for s in (0, 1):
                    cost[s] += t[s][x[j]] if i < j else t[x[j]][s]
            other = 1 - x[i]
            if cost[other] < cost[x[i]]:
                x[i] = other
                moves += 1
                changed = True
    return tuple(x), moves

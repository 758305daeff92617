"""Reductions between preference games and network coordination games."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .core import PlayerGraph, Profile
from .games import DpgParam, DpgPenalty, Ncg, find_deviation, param_to_penalty
from .metric import two_point_path
from .solvers import solve_two_strategy

HALF = Fraction(1, 2)


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeCheck:
    edge: Tuple[int, int]
    symmetric: bool
    submodular: bool


@dataclass(frozen=True)
class SubmodularityReport:
    edges: Tuple[EdgeCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(e.symmetric and e.submodular for e in self.edges)

    @property
    def first_violation(self) -> Optional[EdgeCheck]:
        return next((e for e in self.edges if not (e.symmetric and e.submodular)), None)


def check_symmetric_submodular(game: Ncg) -> SubmodularityReport:
    if any(c != 2 for c in game.strategy_counts):
        raise ValueError("symmetric-submodular check needs exactly two strategies per player")
    checks = []
    for e, c in zip(game.graph.edges, game.tables):
        checks.append(
            EdgeCheck(e, c[0][1] == c[1][0], c[1][0] + c[0][1] >= c[1][1] + c[0][0])
        )
    return SubmodularityReport(tuple(checks))


def dpg_to_ncg(game: Union[DpgPenalty, DpgParam]) -> Ncg:
    """Edge tables ``C_ij(a, b) = own_i(a)/deg_i + own_j(b)/deg_j + w_ij d(a, b)``.

    ``own_k(s) = sum_u p_k(u) d(u, s)``.  The potential of the result equals
    the potential of the input at every profile.
    """
    if isinstance(game, DpgParam):
        game = param_to_penalty(game)
    g = game.graph
    for i in range(g.n):
        if g.degree(i) == 0:
            raise ReductionError(f"reduction undefined for degree-0 players (player {i})")
    d = game.metric.dist
    m = game.metric.point_count
    own = [
        [sum((p * d[u][s] for u, p in enumerate(game.penalties[k])), Fraction(0)) for s in range(m)]
        for k in range(g.n)
    ]
    tables = []
    for k, (i, j) in enumerate(g.edges):
        w = g.edge_weight(k)
        di, dj = g.degree(i), g.degree(j)
        tables.append(
            [[own[i][a] / di + own[j][b] / dj + w * d[a][b] for b in range(m)] for a in range(m)]
        )
    return Ncg(PlayerGraph(g.n, g.edges), (m,) * g.n, tables)


def ncg_to_dpg(game: Ncg, report: Optional[SubmodularityReport] = None) -> DpgPenalty:
    """Two-point path metric at distance 1/2 with

    * ``w_ij = 2 C_ij(1, 0) - C_ij(0, 0) - C_ij(1, 1)``
    * ``p_i(s) = sum over neighbors j of C_ij(1 - s, 1 - s)``
    """
    if report is None:
        report = check_symmetric_submodular(game)
    if not report.all_pass:
        bad = report.first_violation
        what = "symmetric" if not bad.symmetric else "submodular"
        raise ReductionError(f"edge {bad.edge} cost table is not {what}")
    g = game.graph
    weights = [2 * c[1][0] - c[0][0] - c[1][1] for c in game.tables]
    penalties = [[Fraction(0), Fraction(0)] for _ in range(g.n)]
    for (i, j), c in zip(g.edges, game.tables):
        for s in (0, 1):
            penalties[i][s] += c[1 - s][1 - s]
            penalties[j][s] += c[1 - s][1 - s]
    return DpgPenalty(PlayerGraph(g.n, g.edges, weights), two_point_path(HALF), penalties)


def solve_ncg_symsub(game: Ncg) -> Tuple[Profile, int]:
    """PNE of a symmetric-submodular two-strategy NCG via the preference-game image.

    Returns the profile and the number of moves the two-strategy sweep made.
    """
    image = ncg_to_dpg(game)
    x, moves = solve_two_strategy(image)
    dev = find_deviation(game, x)
    if dev is not None:
        raise RuntimeError(f"reduction output is not a PNE of the original game: {dev}")
    return x, moves

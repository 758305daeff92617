"""Cartesian games, the grid pipeline and product-metric decomposition."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .core import GridSpec, Profile, ProductIndex, build_grid_graph, cartesian_graph_product
from .games import (
    DpgParam,
    DpgPenalty,
    check_profile,
    find_deviation,
    is_pne,
    param_to_penalty,
    player_cost,
    potential,
    profile_count,
)
from .metric import build_product
from .solvers import ProfileCapExceeded, default_cap, solve_path_dp


class ConditionError(ValueError):
    """A grid or product hypothesis does not hold; ``witness`` says why."""

    def __init__(self, condition: str, message: str, witness=None):
        super().__init__(f"condition ({condition}) fails: {message}")
        self.condition = condition
        self.witness = witness


@dataclass(frozen=True)
class AxisPreference:
    """``tables[t][c]``: preferred factor-``t`` point of grid coordinate ``c`` on axis ``t``."""

    tables: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class ConditionBFailure:
    axis: int
    coordinate: int
    first: Tuple[int, ...]
    second: Tuple[int, ...]


@dataclass(frozen=True)
class SubgameFamily:
    """Factor games plus the index tying factor strategies to product strategies.

    ``mode == "cartesian"``: factor ``t`` is played by the axis-``t``
    coordinates of the product players (grid decomposition).
    ``mode == "subgame"``: every factor is played on the composite game's
    own graph, one metric coordinate each (penalty decomposition).
    """

    mode: str
    factors: Tuple[Union[DpgParam, DpgPenalty], ...]
    index: ProductIndex
    ell: object
    composite: Union[DpgParam, DpgPenalty, None] = None


def cartesian_game(factors: Sequence[DpgParam]) -> DpgParam:
    factors = tuple(factors)
    if not factors:
        raise ValueError("need at least one factor game")
    alpha = factors[0].alpha
    if any(f.alpha != alpha for f in factors):
        raise ValueError("cartesian factors must share alpha")
    prod = cartesian_graph_product([f.graph for f in factors])
    metric, strategies = build_product([f.metric for f in factors], 1)
    beta = [
        strategies.flat([f.beta[c] for f, c in zip(factors, coords)]) for coords in prod.index
    ]
    return DpgParam(prod.graph, metric, beta, alpha)


def _combine(players: ProductIndex, strategies: ProductIndex, factor_profiles) -> Profile:
    return tuple(
        strategies.flat([x[c] for x, c in zip(factor_profiles, coords)]) for coords in players
    )


def compose_pne(factors: Sequence[DpgParam], factor_pnes: Sequence[Sequence[int]]) -> Profile:
    """Product player ``(i_1..i_k)`` plays ``(x^1_{i_1}, ..., x^k_{i_k})``."""
    factors = tuple(factors)
    if len(factor_pnes) != len(factors):
        raise ValueError(f"{len(factor_pnes)} profiles for {len(factors)} factors")
    for t, (f, x) in enumerate(zip(factors, factor_pnes)):
        if not is_pne(f, check_profile(f, x)):
            raise ValueError(f"profile for factor {t} is not a PNE: {find_deviation(f, x)}")
    players = ProductIndex([f.graph.n for f in factors])
    strategies = ProductIndex([f.metric.point_count for f in factors])
    out = _combine(players, strategies, factor_pnes)
    if not is_pne(cartesian_game(factors), out):
        raise RuntimeError("composed profile is not a PNE of the cartesian game")
    return out


def _check_grid(game: DpgParam, grid: GridSpec) -> ProductIndex:
    if game.graph != build_grid_graph(grid):
        raise ValueError(f"player graph is not the {list(grid.dims)} grid")
    strategies = game.metric.index
    if strategies is None:
        raise ConditionError("A", "metric is not a product metric")
    if len(strategies.sizes) != len(grid.dims):
        raise ValueError(
            f"grid has {len(grid.dims)} axes but the metric has {len(strategies.sizes)} factors"
        )
    return strategies


def check_condition_b(game: DpgParam, grid: GridSpec) -> Union[AxisPreference, ConditionBFailure]:
    """Per-axis preference tables if every player's preference factorizes."""
    strategies = _check_grid(game, grid)
    players = grid.index
    tables = []
    for t, m in enumerate(grid.dims):
        owner = [None] * m
        row = [None] * m
        for coords in players:
            comp = strategies.coords(game.beta[players.flat(coords)])[t]
            c = coords[t]
            if row[c] is None:
                row[c], owner[c] = comp, coords
            elif row[c] != comp:
                return ConditionBFailure(t, c, owner[c], coords)
        tables.append(tuple(row))
    return AxisPreference(tuple(tables))


def decompose_grid(game: DpgParam, grid: GridSpec, witness: AxisPreference) -> SubgameFamily:
    strategies = _check_grid(game, grid)
    prov = game.metric.provenance
    if prov.ell != 1:
        raise ConditionError("A", f"metric is an {prov.ell}-product, not a 1-product")
    factors = tuple(
        DpgParam(build_grid_graph(GridSpec([m])), metric, witness.tables[t], game.alpha)
        for t, (m, metric) in enumerate(zip(grid.dims, prov.factors))
    )
    return SubgameFamily("cartesian", factors, strategies, 1, game)


def solve_grid(game: DpgParam, grid: GridSpec) -> Profile:
    """PNE of a grid game satisfying conditions (A) and (B)."""
    witness = check_condition_b(game, grid)
    if isinstance(witness, ConditionBFailure):
        raise ConditionError(
            "B",
            f"axis {witness.axis}, coordinate {witness.coordinate}: players "
            f"{witness.first} and {witness.second} disagree on their preferred component",
            witness,
        )
    family = decompose_grid(game, grid, witness)
    pnes = [solve_path_dp(f) for f in family.factors]
    out = _combine(grid.index, family.index, pnes)
    if not is_pne(game, out):
        raise RuntimeError("grid pipeline produced a non-equilibrium")
    return out


def decompose_penalties(game: Union[DpgPenalty, DpgParam], require_one_product: bool = True) -> SubgameFamily:
    """Split a penalty game on a product metric into one subgame per factor.

    Subgame ``t`` keeps the player graph and weights and uses penalties
    ``q_i^t(s) = sum of p_i(u) over points u whose t-th coordinate is s``.
    Parameter games are converted to penalty form first.  With
    ``require_one_product=False`` any product (e.g. ell = inf) is accepted;
    the decomposition is then only a candidate.
    """
    if isinstance(game, DpgParam):
        game = param_to_penalty(game)
    prov = game.metric.provenance
    if prov.kind != "product":
        raise ConditionError("A", "metric is not a product metric")
    if require_one_product and prov.ell != 1:
        raise ConditionError("A", f"metric is an {prov.ell}-product, not a 1-product")
    index = prov.index
    points = [index.coords(u) for u in range(len(index))]
    factors = []
    for t, metric in enumerate(prov.factors):
        q = []
        for row in game.penalties:
            acc = [Fraction(0)] * metric.point_count
            for u, p in enumerate(row):
                acc[points[u][t]] += p
            q.append(acc)
        factors.append(DpgPenalty(game.graph, metric, q))
    return SubgameFamily("subgame", tuple(factors), index, prov.ell, game)


def project(family: SubgameFamily, x: Sequence[int]) -> Tuple[Profile, ...]:
    """Per-axis profiles ``x^t`` of a composite profile."""
    coords = [family.index.coords(v) for v in x]
    return tuple(tuple(c[t] for c in coords) for t in range(len(family.factors)))


def psi(family: SubgameFamily, x: Sequence[int]) -> Fraction:
    """Sum of the factor potentials of the per-axis projections of ``x``."""
    if family.mode != "subgame":
        raise ValueError("psi is defined for penalty decompositions")
    return sum(
        (potential(f, xt) for f, xt in zip(family.factors, project(family, x))), Fraction(0)
    )


def compose_subgame_pne(family: SubgameFamily, subgame_pnes) -> Tuple[Profile, bool]:
    """Compose subgame equilibria into ``x_i = (x^1_i, ..., x^k_i)``.

    Returns the profile and whether it was verified as a PNE.  Only
    1-product decompositions are verified; for other products the
    composition carries no guarantee and the flag is ``False``.
    """
    if len(subgame_pnes) != len(family.factors):
        raise ValueError(f"{len(subgame_pnes)} profiles for {len(family.factors)} subgames")
    for t, (f, x) in enumerate(zip(family.factors, subgame_pnes)):
        if not is_pne(f, check_profile(f, x)):
            raise ValueError(f"profile for subgame {t} is not a PNE")
    n = family.factors[0].graph.n
    out = tuple(family.index.flat([x[i] for x in subgame_pnes]) for i in range(n))
    if family.ell != 1:
        return out, False
    if not is_pne(family.composite, out):
        raise RuntimeError("composition on a 1-product metric is not a PNE")
    return out, True


@dataclass(frozen=True)
class OrdinalViolation:
    profile: Profile
    player: int
    to_strategy: int
    cost_before: Fraction
    cost_after: Fraction
    psi_before: Fraction
    psi_after: Fraction


def find_ordinal_violation(family: SubgameFamily, cap: Optional[int] = None) -> Optional[OrdinalViolation]:
    """First unilateral move that lowers the mover's cost without lowering psi.

    Profiles, players and target strategies are scanned in lexicographic
    order.  ``None`` means psi is a generalized ordinal potential on the
    whole game.
    """
    game = family.composite
    cap = default_cap() if cap is None else cap
    total = profile_count(game)
    if total > cap:
        raise ProfileCapExceeded(f"game has {total} profiles, above the cap of {cap}")
    m = game.metric.point_count
    for x in itertools.product(range(m), repeat=game.graph.n):
        psi_x = psi(family, x)
        for i in range(game.graph.n):
            c_x = player_cost(game, x, i)
            for s in range(m):
                if s == x[i]:
                    continue
                y = x[:i] + (s,) + x[i + 1:]
                c_y = player_cost(game, y, i)
                if c_x > c_y:
                    psi_y = psi(family, y)
                    if psi_x <= psi_y:
                        return OrdinalViolation(x, i, s, c_x, c_y, psi_x, psi_y)
    return None

"""Pure Nash equilibria of discrete preference and network coordination games."""

from .core import GridSpec, PlayerGraph, ProductIndex, as_rational, build_grid_graph, cartesian_graph_product
from .games import (
    Deviation,
    DpgParam,
    DpgPenalty,
    Ncg,
    best_response,
    find_deviation,
    is_pne,
    player_cost,
    potential,
)
from .metric import INF, FiniteMetric, build_discrete, build_graph_metric, build_product, validate_metric

__version__ = "0.1.0"

__all__ = [
    "Deviation",
    "DpgParam",
    "DpgPenalty",
    "FiniteMetric",
    "GridSpec",
    "INF",
    "Ncg",
    "PlayerGraph",
    "ProductIndex",
    "as_rational",
    "best_response",
    "build_discrete",
    "build_graph_metric",
    "build_grid_graph",
    "build_product",
    "cartesian_graph_product",
    "find_deviation",
    "is_pne",
    "player_cost",
    "potential",
    "validate_metric",
]

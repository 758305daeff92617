"""Seeded random instances.

All randomness goes through ``random.Random`` (Mersenne Twister, MT19937)
seeded with the caller's integer seed, so outputs are reproducible across
runs and platforms.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .compose import AxisPreference
from .core import GridSpec, PlayerGraph, as_rational, build_grid_graph
from .games import DpgParam, DpgPenalty, Ncg
from .metric import FiniteMetric, build_discrete, build_graph_metric, build_product

KINDS = ("dpg_discrete", "grid_dpg", "ncg_symsub")


def random_graph(rng: random.Random, n: int, edge_prob: float, max_degree: Optional[int] = None, weights=None) -> PlayerGraph:
    """G(n, p) graph; pairs are visited in lexicographic order.

    With ``max_degree`` an edge is skipped when either endpoint is full.
    ``weights`` is an optional callable drawing one weight per edge.
    """
    deg = [0] * n
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                if max_degree is not None and (deg[i] >= max_degree or deg[j] >= max_degree):
                    continue
                edges.append((i, j))
                deg[i] += 1
                deg[j] += 1
    w = None if weights is None else [weights(rng) for _ in edges]
    return PlayerGraph(n, edges, w)


def random_metric(rng: random.Random, m: int, kind: str = "discrete") -> FiniteMetric:
    """Random metric on ``m`` points.

    ``discrete``; ``path``/``tree`` with weights in {1/2, 1, 3/2, 2};
    ``graph``: shortest paths on a complete graph with such weights.
    """
    labels = [f"s{k}" for k in range(m)]
    if kind == "discrete" or m == 1:
        return build_discrete(labels)

    def w():
        return Fraction(rng.randint(1, 4), 2)

    if kind == "path":
        edges = [(k, k + 1) for k in range(m - 1)]
    elif kind == "tree":
        edges = [(rng.randrange(k), k) for k in range(1, m)]
    elif kind == "graph":
        edges = [(a, b) for a in range(m) for b in range(a + 1, m)]
    else:
        raise ValueError(f"unknown metric kind {kind!r}")
    return build_graph_metric(PlayerGraph(m, edges, [w() for _ in edges]), labels)


def random_dpg_param(rng, n, edge_prob, points, alpha, metric_kind="discrete", graph=None) -> DpgParam:
    graph = graph or random_graph(rng, n, edge_prob)
    metric = random_metric(rng, points, metric_kind)
    beta = [rng.randrange(points) for _ in range(graph.n)]
    return DpgParam(graph, metric, beta, as_rational(alpha))


def random_dpg_penalty(rng, n, edge_prob, points, metric_kind="discrete", metric=None, graph=None, max_penalty=3) -> DpgPenalty:
    graph = graph or random_graph(
        rng, n, edge_prob, weights=lambda r: Fraction(r.randint(0, 6), r.randint(1, 3))
    )
    metric = metric or random_metric(rng, points, metric_kind)
    penalties = [
        [Fraction(rng.randint(0, 2 * max_penalty), 2) if rng.random() < 0.6 else Fraction(0)
         for _ in range(metric.point_count)]
        for _ in range(graph.n)
    ]
    return DpgPenalty(graph, metric, penalties)


def random_ncg(rng, n, edge_prob, max_strategies=3, max_cost=6, graph=None) -> Ncg:
    graph = graph or random_graph(rng, n, edge_prob)
    counts = [rng.randint(1, max_strategies) for _ in range(graph.n)]
    tables = [
        [[Fraction(rng.randint(0, max_cost)) for _ in range(counts[j])] for _ in range(counts[i])]
        for i, j in graph.edges
    ]
    return Ncg(graph, counts, tables)


def symsub_table(rng: random.Random, lo: int, hi: int, retries: int = 16):
    """Symmetric submodular 2x2 table by rejection, then repair.

    After ``retries`` rejected draws the off-diagonal cost is raised to
    ``ceil((C00 + C11) / 2)``, which restores submodularity and stays in range.
    """
    for _ in range(retries):
        c00, c11, c01 = (rng.randint(lo, hi) for _ in range(3))
        if 2 * c01 >= c00 + c11:
            break
    else:
        c01 = -((-(c00 + c11)) // 2)
    return [[Fraction(c00), Fraction(c01)], [Fraction(c01), Fraction(c11)]]


def random_symsub_ncg(rng, n, edge_prob, lo=0, hi=5, max_degree=None, graph=None) -> Ncg:
    graph = graph or random_graph(rng, n, edge_prob, max_degree)
    tables = [symsub_table(rng, lo, hi) for _ in graph.edges]
    return Ncg(graph, [2] * graph.n, tables)


def random_grid_dpg(rng, dims: Sequence[int], factor_sizes: Sequence[int], alpha, factor_metric="discrete"):
    """Grid game satisfying conditions (A) and (B) by construction.

    Returns ``(game, grid, axis_preference)``.
    """
    grid = GridSpec(dims)
    if len(factor_sizes) != len(grid.dims):
        raise ValueError("need one factor metric size per grid axis")
    factors = [random_metric(rng, m, factor_metric) for m in factor_sizes]
    metric, strategies = build_product(factors, 1)
    tables = tuple(
        tuple(rng.randrange(size) for _ in range(m)) for m, size in zip(grid.dims, factor_sizes)
    )
    beta = [
        strategies.flat([tables[t][c] for t, c in enumerate(coords)]) for coords in grid.index
    ]
    game = DpgParam(build_grid_graph(grid), metric, beta, as_rational(alpha))
    return game, grid, AxisPreference(tables)


def generate_instance(kind: str, seed: int, **params):
    """Build an ``Instance`` of the given generator kind from ``seed``."""
    from .instance import Instance

    rng = random.Random(seed)
    if kind == "dpg_discrete":
        game = random_dpg_param(
            rng, params["n"], params["edge_prob"], params["points"], params["alpha"]
        )
        return Instance(game)
    if kind == "grid_dpg":
        game, grid, pref = random_grid_dpg(
            rng, params["dims"], params["factor_sizes"], params["alpha"],
            params.get("factor_metric", "discrete"),
        )
        return Instance(game, grid, pref)
    if kind == "ncg_symsub":
        lo, hi = params.get("cost_range", (0, 5))
        if lo < 0 or hi < lo:
            raise ValueError(f"bad cost range {(lo, hi)}")
        game = random_symsub_ncg(
            rng, params["n"], params["edge_prob"], lo, hi, params.get("max_degree")
        )
        return Instance(game)
    raise ValueError(f"unknown generator kind {kind!r}; choose from {KINDS}")

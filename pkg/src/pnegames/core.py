"""Exact rationals, player graphs, grid geometry and cartesian graph products.

Every tuple-indexed object in the package (grid players, product-metric
points, composed profiles) is flattened row-major with the first axis
slowest.  Coordinates are 0-based throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Tuple, Union

Rational = Fraction
Profile = Tuple[int, ...]
Edge = Tuple[int, int]

RationalLike = Union[Fraction, int, str, Sequence[int]]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, "p/q" strings, ``Fraction`` or ``[num, den]`` pairs."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    num, den = value
    if isinstance(num, bool) or isinstance(den, bool):
        raise TypeError("booleans are not rationals")
    if not isinstance(num, int) or not isinstance(den, int):
        raise TypeError(f"rational pair must hold two integers, got {value!r}")
    if den <= 0:
        raise ValueError(f"denominator must be positive, got {den}")
    return Fraction(num, den)


class ProductIndex:
    """Row-major bijection between coordinate tuples and flat indices."""

    def __init__(self, sizes: Sequence[int]):
        sizes = tuple(int(s) for s in sizes)
        if not sizes:
            raise ValueError("a product needs at least one factor")
        if any(s < 1 for s in sizes):
            raise ValueError(f"factor sizes must be positive, got {sizes}")
        self.sizes = sizes
        strides = [1] * len(sizes)
        for t in range(len(sizes) - 2, -1, -1):
            strides[t] = strides[t + 1] * sizes[t + 1]
        self.strides = tuple(strides)
        self.size = strides[0] * sizes[0]

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductIndex) and other.sizes == self.sizes

    def __hash__(self) -> int:
        return hash(("ProductIndex", self.sizes))

    def __repr__(self) -> str:
        return f"ProductIndex({list(self.sizes)})"

    def flat(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.sizes):
            raise ValueError(f"expected {len(self.sizes)} coordinates, got {len(coords)}")
        out = 0
        for c, s, stride in zip(coords, self.sizes, self.strides):
            if not 0 <= c < s:
                raise ValueError(f"coordinate {c} out of range for axis of size {s}")
            out += c * stride
        return out

    def coords(self, flat: int) -> Tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise ValueError(f"flat index {flat} out of range [0, {self.size})")
        out = []
        for stride in self.strides:
            q, flat = divmod(flat, stride)
            out.append(q)
        return tuple(out)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*(range(s) for s in self.sizes))


@dataclass(frozen=True)
class PlayerGraph:
    """Simple undirected graph on players ``0..n-1``.

    ``edges`` is kept sorted with ``i < j`` in each pair.  ``weights`` is
    either ``None`` (unweighted, every edge weighs 1) or a tuple aligned
    with ``edges``.
    """

    n: int
    edges: Tuple[Edge, ...] = ()
    weights: Union[Tuple[Fraction, ...], None] = None

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), weights=None):
        if n < 1:
            raise ValueError(f"player_count must be positive, got {n}")
        pairs = []
        for e in edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"self-loop at player {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {(i, j)} has an endpoint outside [0, {n})")
            pairs.append((min(i, j), max(i, j)))
        if weights is not None:
            weights = [as_rational(w) for w in weights]
            if len(weights) != len(pairs):
                raise ValueError(f"{len(weights)} weights given for {len(pairs)} edges")
            if any(w < 0 for w in weights):
                raise ValueError("edge weights must be nonnegative")
            order = sorted(range(len(pairs)), key=pairs.__getitem__)
            pairs = [pairs[k] for k in order]
            weights = tuple(weights[k] for k in order)
        else:
            pairs.sort()
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate edge")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(pairs))
        object.__setattr__(self, "weights", weights)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def edge_weight(self, k: int) -> Fraction:
        return Fraction(1) if self.weights is None else self.weights[k]

    @cached_property
    def edge_ids(self) -> dict:
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Per player, ``(neighbor, edge_id)`` pairs sorted by neighbor."""
        adj = [[] for _ in range(self.n)]
        for k, (i, j) in enumerate(self.edges):
            adj[i].append((j, k))
            adj[j].append((i, k))
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return tuple(j for j, _ in self.adjacency[i])

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def max_degree(self) -> int:
        return max(len(a) for a in self.adjacency)

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v, _ in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def path_order(self) -> Union[Tuple[int, ...], None]:
        """Players in path order if the graph is a simple path, else ``None``.

        The order starts at the lower-indexed endpoint.
        """
        if self.n == 1:
            return (0,)
        if len(self.edges) != self.n - 1 or self.max_degree() > 2:
            return None
        if not self.is_connected():
            return None
        start = min(i for i in range(self.n) if self.degree(i) == 1)
        order = [start]
        prev = -1
        while len(order) < self.n:
            u = order[-1]
            nxt = [v for v in self.neighbors(u) if v != prev]
            prev = u
            order.append(nxt[0])
        return tuple(order)


@dataclass(frozen=True)
class GridSpec:
    """Shape ``M_1 x ... x M_k`` of a grid graph."""

    dims: Tuple[int, ...]

    def __init__(self, dims: Sequence[int]):
        dims = tuple(int(m) for m in dims)
        if not dims or any(m < 1 for m in dims):
            raise ValueError(f"grid dims must be a nonempty list of positive ints, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def index(self) -> ProductIndex:
        return ProductIndex(self.dims)

    @property
    def player_count(self) -> int:
        return len(self.index)


def path_graph(m: int) -> PlayerGraph:
    return PlayerGraph(m, [(i, i + 1) for i in range(m - 1)])


def build_grid_graph(grid: GridSpec) -> PlayerGraph:
    """Unweighted grid: an edge joins tuples at L1 distance exactly 1."""
    index = grid.index
    edges = []
    for coords in index:
        u = index.flat(coords)
        for t, m in enumerate(grid.dims):
            if coords[t] + 1 < m:
                edges.append((u, u + index.strides[t]))
    return PlayerGraph(index.size, edges)


@dataclass(frozen=True)
class ProductGraph:
    graph: PlayerGraph
    index: ProductIndex
    # axis each product edge came from, aligned with graph.edges
    edge_axis: Tuple[int, ...] = field(default=())


def cartesian_graph_product(graphs: Sequence[PlayerGraph]) -> ProductGraph:
    """Cartesian product ``G_1 x ... x G_k`` with per-edge axis labels.

    Factor weights are ignored; the product is unweighted.
    """
    if not graphs:
        raise ValueError("need at least one factor graph")
    index = ProductIndex([g.n for g in graphs])
    axis_of = {}
    for coords in index:
        u = index.flat(coords)
        for t, g in enumerate(graphs):
            for j in g.neighbors(coords[t]):
                if j > coords[t]:
                    v = u + (j - coords[t]) * index.strides[t]
                    axis_of[(u, v)] = t
    graph = PlayerGraph(index.size, list(axis_of))
    return ProductGraph(graph, index, tuple(axis_of[e] for e in graph.edges))

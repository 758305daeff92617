"""Finite metric spaces over exact rationals."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .core import PlayerGraph, ProductIndex, as_rational

INF = math.inf

Ell = Union[int, float]


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """First metric axiom found broken, with the witnessing indices."""

    axiom: str  # shape | diagonal | symmetry | positivity | triangle
    indices: Tuple[int, ...]

    def __str__(self) -> str:
        if self.axiom == "triangle":
            x, y, z = self.indices
            return f"triangle inequality fails: d({x},{y}) > d({x},{z}) + d({z},{y})"
        return f"{self.axiom} axiom fails at {self.indices}"


@dataclass(frozen=True)
class Provenance:
    kind: str  # explicit | discrete | graph | product
    ell: Optional[Ell] = None
    factors: Tuple["FiniteMetric", ...] = ()
    # graph-derived metrics keep their source so they can be re-serialized
    graph: Optional[PlayerGraph] = None
    tree: bool = False
    path: bool = False

    @property
    def index(self) -> Optional[ProductIndex]:
        if self.kind != "product":
            return None
        return ProductIndex([f.point_count for f in self.factors])


@dataclass(frozen=True)
class FiniteMetric:
    labels: Tuple[str, ...]
    dist: Tuple[Tuple[Fraction, ...], ...]
    provenance: Provenance = field(default=Provenance("explicit"))

    def __post_init__(self):
        if len(self.labels) != len(self.dist):
            raise MetricError(f"{len(self.labels)} labels for a {len(self.dist)}-point matrix")
        bad = validate_metric(self.dist)
        if bad is not None:
            raise MetricError(str(bad))

    @property
    def point_count(self) -> int:
        return len(self.dist)

    def d(self, x: int, y: int) -> Fraction:
        return self.dist[x][y]

    @property
    def is_discrete(self) -> bool:
        one = Fraction(1)
        return all(
            self.dist[x][y] == one
            for x in range(self.point_count)
            for y in range(self.point_count)
            if x != y
        )

    @property
    def index(self) -> Optional[ProductIndex]:
        return self.provenance.index


def explicit_metric(dist, labels: Optional[Sequence[str]] = None) -> FiniteMetric:
    rows = tuple(tuple(as_rational(v) for v in row) for row in dist)
    if labels is None:
        labels = [str(i) for i in range(len(rows))]
    return FiniteMetric(tuple(str(l) for l in labels), rows, Provenance("explicit"))


def _scaled_int_matrix(dist) -> np.ndarray:
    den = 1
    for row in dist:
        for v in row:
            den = math.lcm(den, v.denominator)
    ints = [[v.numerator * (den // v.denominator) for v in row] for row in dist]
    biggest = max((abs(v) for row in ints for v in row), default=0)
    dtype = np.int64 if biggest < 2**61 else object
    return np.array(ints, dtype=dtype).reshape(len(dist), len(dist))


def validate_metric(dist) -> Optional[Violation]:
    """Return ``None`` if ``dist`` is a metric, else the first violation.

    Axioms are checked in the order shape, diagonal, symmetry, positivity,
    triangle; within an axiom the lexicographically first index tuple wins.
    """
    m = len(dist)
    for x, row in enumerate(dist):
        if len(row) != m:
            return Violation("shape", (x,))
    if m == 0:
        return Violation("shape", ())
    for x in range(m):
        if dist[x][x] != 0:
            return Violation("diagonal", (x,))
    for x in range(m):
        for y in range(x + 1, m):
            if dist[x][y] != dist[y][x]:
                return Violation("symmetry", (x, y))
    for x in range(m):
        for y in range(x + 1, m):
            if dist[x][y] <= 0:
                return Violation("positivity", (x, y))
    d = _scaled_int_matrix(dist)
    for x in range(m):
        # bad[y, z]  <=>  d[x, y] > d[x, z] + d[z, y]
        bad = d[x][:, None] > (d[x][None, :] + d.T)
        if bad.any():
            y, z = (int(v) for v in np.argwhere(bad)[0])
            return Violation("triangle", (x, y, z))
    return None


def build_discrete(labels: Sequence) -> FiniteMetric:
    labels = tuple(str(l) for l in labels)
    if not labels:
        raise MetricError("a metric needs at least one point")
    m = len(labels)
    one, zero = Fraction(1), Fraction(0)
    dist = tuple(tuple(zero if x == y else one for y in range(m)) for x in range(m))
    return FiniteMetric(labels, dist, Provenance("discrete"))


def build_graph_metric(g: PlayerGraph, labels: Optional[Sequence] = None) -> FiniteMetric:
    """Shortest-path metric of a connected graph with positive weights."""
    m = g.n
    for k, e in enumerate(g.edges):
        if g.edge_weight(k) <= 0:
            raise MetricError(f"edge {e} has nonpositive weight {g.edge_weight(k)}")
    if not g.is_connected():
        raise MetricError("graph is disconnected: infinite distance between components")
    dist: list = [[None] * m for _ in range(m)]
    for x in range(m):
        dist[x][x] = Fraction(0)
    for k, (i, j) in enumerate(g.edges):
        dist[i][j] = dist[j][i] = g.edge_weight(k)
    for z in range(m):
        for x in range(m):
            dxz = dist[x][z]
            if dxz is None:
                continue
            for y in range(m):
                dzy = dist[z][y]
                if dzy is None:
                    continue
                if dist[x][y] is None or dxz + dzy < dist[x][y]:
                    dist[x][y] = dxz + dzy
    tree = len(g.edges) == m - 1
    path = tree and g.path_order() is not None
    if labels is None:
        labels = [str(i) for i in range(m)]
    return FiniteMetric(
        tuple(str(l) for l in labels),
        tuple(tuple(row) for row in dist),
        Provenance("graph", graph=g, tree=tree, path=path),
    )


def build_product(factors: Sequence[FiniteMetric], ell: Ell = 1) -> Tuple[FiniteMetric, ProductIndex]:
    """ell-product of factor metrics.

    For finite ``ell`` the distance is the sum of ell-th powers of factor
    distances (not the ell-norm); for ``ell = inf`` it is the max.  Results
    that break the triangle inequality raise ``MetricError``.
    """
    factors = tuple(factors)
    if not factors:
        raise MetricError("a product needs at least one factor")
    if ell != INF and not (isinstance(ell, int) and ell >= 1):
        raise MetricError(f"ell must be a positive integer or inf, got {ell!r}")
    index = ProductIndex([f.point_count for f in factors])
    points = list(index)
    dist = []
    for x in points:
        row = []
        for y in points:
            parts = [f.dist[a][b] for f, a, b in zip(factors, x, y)]
            row.append(max(parts) if ell == INF else sum((p**ell for p in parts), Fraction(0)))
        dist.append(tuple(row))
    labels = tuple("(" + ",".join(f.labels[c] for f, c in zip(factors, x)) + ")" for x in points)
    try:
        metric = FiniteMetric(labels, tuple(dist), Provenance("product", ell=ell, factors=factors))
    except MetricError as exc:
        raise MetricError(f"{ell}-product is not a metric: {exc}") from None
    return metric, index


def two_point_path(distance: Fraction = Fraction(1, 2)) -> FiniteMetric:
    return build_graph_metric(PlayerGraph(2, [(0, 1)], [distance]))

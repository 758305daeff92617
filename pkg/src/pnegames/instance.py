"""JSON instance files.

Rationals are ``[numerator, denominator]`` integer pairs everywhere.  The
``ell`` of a product metric is a positive integer or the string ``"inf"``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import jsonschema

from .compose import AxisPreference, ConditionBFailure, check_condition_b
from .core import GridSpec, PlayerGraph, as_rational, build_grid_graph
from .games import DpgParam, DpgPenalty, Game, Ncg
from .metric import INF, FiniteMetric, MetricError, build_discrete, build_graph_metric, build_product, explicit_metric

FORMAT_VERSION = 1

_RATIONAL = {
    "type": "array",
    "items": {"type": "integer"},
    "minItems": 2,
    "maxItems": 2,
}
_EDGES = {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2}}
_LABELS = {"type": "array", "items": {"type": "string"}, "minItems": 1}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "rational": _RATIONAL,
        "metric": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": ["explicit", "discrete", "graph", "product"]}},
            "allOf": [
                {
                    "if": {"properties": {"type": {"const": "explicit"}}},
                    "then": {
                        "required": ["dist"],
                        "additionalProperties": False,
                        "properties": {
                            "type": True,
                            "labels": _LABELS,
                            "dist": {"type": "array", "minItems": 1, "items": {"type": "array", "items": _RATIONAL}},
                        },
                    },
                },
                {
                    "if": {"properties": {"type": {"const": "discrete"}}},
                    "then": {
                        "required": ["labels"],
                        "additionalProperties": False,
                        "properties": {"type": True, "labels": _LABELS},
                    },
                },
                {
                    "if": {"properties": {"type": {"const": "graph"}}},
                    "then": {
                        "required": ["n", "edges"],
                        "additionalProperties": False,
                        "properties": {
                            "type": True,
                            "labels": _LABELS,
                            "n": {"type": "integer", "minimum": 1},
                            "edges": _EDGES,
                            "weights": {"type": "array", "items": _RATIONAL},
                        },
                    },
                },
                {
                    "if": {"properties": {"type": {"const": "product"}}},
                    "then": {
                        "required": ["ell", "factors"],
                        "additionalProperties": False,
                        "properties": {
                            "type": True,
                            "ell": {"oneOf": [{"type": "integer", "minimum": 1}, {"const": "inf"}]},
                            "factors": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/metric"}},
                        },
                    },
                },
            ],
        },
    },
    "type": "object",
    "additionalProperties": False,
    "required": ["format_version", "kind", "graph"],
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"enum": ["dpg_param", "dpg_penalty", "ncg"]},
        "graph": {
            "type": "object",
            "additionalProperties": False,
            "required": ["n", "edges"],
            "properties": {
                "n": {"type": "integer", "minimum": 1},
                "edges": _EDGES,
                "weights": {"type": "array", "items": _RATIONAL},
            },
        },
        "metric": {"$ref": "#/$defs/metric"},
        "beta": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "alpha": _RATIONAL,
        "penalties": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
        "strategy_counts": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "edge_costs": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["dims"],
            "properties": {
                "dims": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
                "axis_preferences": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
            },
        },
    },
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "dpg_param"}}},
            "then": {
                "required": ["metric", "beta", "alpha"],
                "not": {"anyOf": [{"required": ["penalties"]}, {"required": ["strategy_counts"]}, {"required": ["edge_costs"]}]},
            },
        },
        {
            "if": {"properties": {"kind": {"const": "dpg_penalty"}}},
            "then": {
                "required": ["metric", "penalties"],
                "not": {"anyOf": [{"required": ["beta"]}, {"required": ["alpha"]}, {"required": ["strategy_counts"]}, {"required": ["edge_costs"]}, {"required": ["grid"]}]},
            },
        },
        {
            "if": {"properties": {"kind": {"const": "ncg"}}},
            "then": {
                "required": ["strategy_counts", "edge_costs"],
                "not": {"anyOf": [{"required": ["metric"]}, {"required": ["beta"]}, {"required": ["alpha"]}, {"required": ["penalties"]}, {"required": ["grid"]}]},
            },
        },
    ],
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    game: Game
    grid: Optional[GridSpec] = None
    axis_preferences: Optional[AxisPreference] = None

    @property
    def kind(self) -> str:
        return {DpgParam: "dpg_param", DpgPenalty: "dpg_penalty", Ncg: "ncg"}[type(self.game)]


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def _q(v: Fraction) -> list:
    return [v.numerator, v.denominator]


def _rat(pair, where: str) -> Fraction:
    try:
        return as_rational(pair)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{where}: {exc}") from None


def _graph(obj: dict, where: str) -> PlayerGraph:
    weights = obj.get("weights")
    if weights is not None:
        weights = [_rat(w, f"{where}.weights[{k}]") for k, w in enumerate(weights)]
    try:
        return PlayerGraph(obj["n"], obj["edges"], weights)
    except ValueError as exc:
        raise InstanceError(f"{where}: {exc}") from None


def _metric(obj: dict, where: str) -> FiniteMetric:
    try:
        kind = obj["type"]
        if kind == "discrete":
            return build_discrete(obj["labels"])
        if kind == "explicit":
            dist = [
                [_rat(v, f"{where}.dist[{x}][{y}]") for y, v in enumerate(row)]
                for x, row in enumerate(obj["dist"])
            ]
            return explicit_metric(dist, obj.get("labels"))
        if kind == "graph":
            g = _graph(obj, where)
            return build_graph_metric(g, obj.get("labels"))
        ell = INF if obj["ell"] == "inf" else obj["ell"]
        factors = [_metric(f, f"{where}.factors[{t}]") for t, f in enumerate(obj["factors"])]
        return build_product(factors, ell)[0]
    except MetricError as exc:
        raise InstanceError(f"{where}: {exc}") from None


def metric_to_json(metric: FiniteMetric) -> dict:
    prov = metric.provenance
    labels = list(metric.labels)
    if prov.kind == "discrete":
        return {"type": "discrete", "labels": labels}
    if prov.kind == "graph":
        out = {"type": "graph", "labels": labels, "n": prov.graph.n, "edges": [list(e) for e in prov.graph.edges]}
        if prov.graph.weights is not None:
            out["weights"] = [_q(w) for w in prov.graph.weights]
        return out
    if prov.kind == "product":
        return {
            "type": "product",
            "ell": "inf" if prov.ell == INF else prov.ell,
            "factors": [metric_to_json(f) for f in prov.factors],
        }
    return {"type": "explicit", "labels": labels, "dist": [[_q(v) for v in row] for row in metric.dist]}


def instance_to_json(inst: Instance) -> dict:
    game = inst.game
    g = game.graph
    graph = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.weights is not None:
        graph["weights"] = [_q(w) for w in g.weights]
    out = {"format_version": FORMAT_VERSION, "kind": inst.kind, "graph": graph}
    if isinstance(game, Ncg):
        out["strategy_counts"] = list(game.strategy_counts)
        out["edge_costs"] = [[[_q(v) for v in row] for row in t] for t in game.tables]
        return out
    out["metric"] = metric_to_json(game.metric)
    if isinstance(game, DpgParam):
        out["beta"] = list(game.beta)
        out["alpha"] = _q(game.alpha)
    else:
        out["penalties"] = [[_q(v) for v in row] for row in game.penalties]
    if inst.grid is not None:
        out["grid"] = {"dims": list(inst.grid.dims)}
        if inst.axis_preferences is not None:
            out["grid"]["axis_preferences"] = [list(r) for r in inst.axis_preferences.tables]
    return out


def serialize_instance(inst: Instance) -> str:
    return json.dumps(instance_to_json(inst), indent=1) + "\n"


def parse_instance(text: str) -> Instance:
    """Parse and fully validate an instance file; errors name the offending field."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from None
    err = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(obj))
    if err is not None:
        raise InstanceError(f"{_path(err.absolute_path)}: {err.message}")
    graph = _graph(obj["graph"], "graph")
    kind = obj["kind"]
    try:
        if kind == "ncg":
            tables = [
                [[_rat(v, f"edge_costs[{k}][{a}][{b}]") for b, v in enumerate(row)] for a, row in enumerate(t)]
                for k, t in enumerate(obj["edge_costs"])
            ]
            game = Ncg(graph, obj["strategy_counts"], tables)
        else:
            metric = _metric(obj["metric"], "metric")
            if kind == "dpg_param":
                alpha = _rat(obj["alpha"], "alpha")
                if not 0 <= alpha < 1:
                    raise InstanceError(f"alpha: alpha must satisfy 0 <= alpha < 1, got {alpha}")
                game = DpgParam(graph, metric, obj["beta"], alpha)
            else:
                pens = [
                    [_rat(v, f"penalties[{i}][{s}]") for s, v in enumerate(row)]
                    for i, row in enumerate(obj["penalties"])
                ]
                game = DpgPenalty(graph, metric, pens)
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError(f"{kind}: {exc}") from None

    grid = pref = None
    if "grid" in obj:
        grid = GridSpec(obj["grid"]["dims"])
        if game.graph != build_grid_graph(grid):
            raise InstanceError(f"grid.dims: graph is not the {list(grid.dims)} grid")
        if "axis_preferences" in obj["grid"]:
            pref = AxisPreference(tuple(tuple(r) for r in obj["grid"]["axis_preferences"]))
            try:
                found = check_condition_b(game, grid)
            except ValueError as exc:
                raise InstanceError(f"grid.axis_preferences: {exc}") from None
            if isinstance(found, ConditionBFailure) or found != pref:
                raise InstanceError("grid.axis_preferences: inconsistent with the preferred strategies")
    return Instance(game, grid, pref)

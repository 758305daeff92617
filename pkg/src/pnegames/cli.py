"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from .compose import compose_subgame_pne, decompose_penalties, psi, solve_grid
from .dynamics import POLICIES, run_brd
from .games import DpgParam, DpgPenalty, Ncg, check_profile, find_deviation, potential, strategy_counts
from .generate import KINDS, generate_instance
from .instance import Instance, parse_instance, serialize_instance
from .reduce import dpg_to_ncg, ncg_to_dpg, solve_ncg_symsub
from .solvers import brute_force_pne_set, minimize_potential_bruteforce, solve_path_dp

log = logging.getLogger("pnegames")

ALGOS = ("brd", "path-dp", "grid", "product-decompose", "brute", "ncg-symsub")


class InputError(Exception):
    pass


def _q(v: Fraction) -> list:
    return [v.numerator, v.denominator]


def _fmt(v: Fraction) -> str:
    return str(v)


def _read_instance(path: str) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_instance(text)


def _read_profile(path: str, inst: Instance):
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read profile from {path}: {exc}") from None
    if isinstance(obj, dict):
        obj = obj.get("profile")
    if not isinstance(obj, list) or not all(isinstance(v, int) for v in obj):
        raise InputError(f"{path}: expected a result file or a list of strategy indices")
    try:
        return check_profile(inst.game, obj)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _parse_ints(text: str):
    return [int(v) for v in text.split(",") if v.strip()]


def cmd_gen(args) -> int:
    params = {}
    if args.kind == "dpg_discrete":
        params = dict(n=args.n, edge_prob=args.edge_prob, points=args.points, alpha=Fraction(args.alpha))
    elif args.kind == "grid_dpg":
        if not args.dims or not args.factor_sizes:
            raise InputError("grid_dpg needs --dims and --factor-sizes")
        params = dict(
            dims=_parse_ints(args.dims),
            factor_sizes=_parse_ints(args.factor_sizes),
            alpha=Fraction(args.alpha),
            factor_metric=args.factor_metric,
        )
    else:
        params = dict(
            n=args.n,
            edge_prob=args.edge_prob,
            cost_range=tuple(_parse_ints(args.cost_range)),
            max_degree=args.max_degree,
        )
    inst = generate_instance(args.kind, args.seed, **params)
    _write(args.out, serialize_instance(inst))
    print(f"wrote {inst.kind} instance with {inst.game.graph.n} players to {args.out}")
    return 0


def _start_profile(game, seed):
    counts = strategy_counts(game)
    if seed is None:
        return [0] * len(counts)
    rng = random.Random(seed)
    return [rng.randrange(c) for c in counts]


def cmd_solve(args) -> int:
    inst = _read_instance(args.inp)
    game = inst.game
    t0 = time.perf_counter()
    result = {"format_version": 1, "solver": args.algo, "seed": args.seed}
    if args.algo == "brd":
        x, trace = run_brd(game, _start_profile(game, args.seed), args.policy)
        result["trace"] = trace.to_json()
    elif args.algo == "path-dp":
        if isinstance(game, Ncg):
            raise InputError("path-dp takes a preference game")
        x = solve_path_dp(game)
    elif args.algo == "grid":
        if inst.grid is None or not isinstance(game, DpgParam):
            raise InputError("grid solver needs a dpg_param instance with a grid block")
        x = solve_grid(game, inst.grid)
    elif args.algo == "product-decompose":
        if isinstance(game, Ncg):
            raise InputError("product-decompose takes a preference game")
        family = decompose_penalties(game)
        subs = [run_brd(f, [0] * f.graph.n, args.policy)[0] for f in family.factors]
        x, _ = compose_subgame_pne(family, subs)
        result["subgame_profiles"] = [list(s) for s in subs]
    elif args.algo == "brute":
        pnes = brute_force_pne_set(game, args.cap)
        x = minimize_potential_bruteforce(game, args.cap)
        result["pne_set"] = [list(p) for p in pnes]
    else:
        if not isinstance(game, Ncg):
            raise InputError("ncg-symsub takes an ncg instance")
        x, moves = solve_ncg_symsub(game)
        result["moves"] = moves
    elapsed = time.perf_counter() - t0
    dev = find_deviation(game, x)
    result.update(
        profile=list(x),
        verdict="pne" if dev is None else "not-pne",
        potential=_q(potential(game, x)),
    )
    if args.timing:
        result["wall_time"] = elapsed
    log.info("%s solved in %.3fs", args.algo, elapsed)
    _write(args.out, _dump(result))
    print(f"{args.algo}: profile {list(x)} potential {_fmt(potential(game, x))} verdict {result['verdict']}")
    if "pne_set" in result:
        print(f"pne set ({len(result['pne_set'])} profiles):")
        for p in result["pne_set"]:
            print("  " + " ".join(str(v) for v in p))
    return 0 if dev is None else 1


def cmd_verify(args) -> int:
    inst = _read_instance(args.inp)
    x = _read_profile(args.profile, inst)
    dev = find_deviation(inst.game, x)
    if dev is None:
        print(f"PNE: profile {list(x)}")
        return 0
    print(
        f"not a PNE: player {dev.player} improves {dev.from_strategy} -> {dev.to_strategy} "
        f"(cost {_fmt(dev.old_cost)} -> {_fmt(dev.new_cost)})"
    )
    return 1


def cmd_potential(args) -> int:
    inst = _read_instance(args.inp)
    x = _read_profile(args.profile, inst)
    if args.which == "phi":
        value = potential(inst.game, x)
    else:
        if not isinstance(inst.game, (DpgParam, DpgPenalty)):
            raise InputError("psi needs a preference game on a product metric")
        value = psi(decompose_penalties(inst.game, require_one_product=False), x)
    print(json.dumps({"which": args.which, "value": _q(value)}))
    return 0


def cmd_reduce(args) -> int:
    inst = _read_instance(args.inp)
    game = inst.game
    if args.to == "ncg":
        if isinstance(game, Ncg):
            raise InputError("input is already an ncg")
        out = dpg_to_ncg(game)
    else:
        if not isinstance(game, Ncg):
            raise InputError("reduce --to dpg takes an ncg instance")
        out = ncg_to_dpg(game)
    _write(args.out, serialize_instance(Instance(out)))
    print(f"wrote {Instance(out).kind} instance to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pnegames", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random instance")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--edge-prob", type=float, default=0.3)
    g.add_argument("--points", type=int, default=3)
    g.add_argument("--alpha", default="1/2")
    g.add_argument("--dims")
    g.add_argument("--factor-sizes")
    g.add_argument("--factor-metric", choices=("discrete", "path", "tree", "graph"), default="discrete")
    g.add_argument("--cost-range", default="0,5")
    g.add_argument("--max-degree", type=int)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="compute a PNE")
    s.add_argument("--algo", choices=ALGOS, required=True)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--policy", choices=POLICIES, default="lowest-index")
    s.add_argument("--cap", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--timing", action="store_true", help="record wall time in the result file")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a profile is a PNE")
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--profile", required=True)
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("potential", help="evaluate phi or psi at a profile")
    q.add_argument("--in", dest="inp", required=True)
    q.add_argument("--profile", required=True)
    q.add_argument("--which", choices=("phi", "psi"), default="phi")
    q.set_defaults(func=cmd_potential)

    r = sub.add_parser("reduce", help="convert between preference and coordination games")
    r.add_argument("--to", choices=("ncg", "dpg"), required=True)
    r.add_argument("--in", dest="inp", required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_reduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

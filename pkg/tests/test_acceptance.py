"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary.
"""
import itertools
import random
import statistics
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from importlib import resources


from conftest import ACCEPTANCE_LINES
from pnegames.compose import (
    cartesian_game,
    compose_pne,
    decompose_penalties,
    find_ordinal_violation,
    psi,
    solve_grid,
)
from pnegames.core import PlayerGraph
from pnegames.dynamics import POLICIES, mu, run_brd
from pnegames.games import is_pne, player_cost, potential, strategy_counts
from pnegames.generate import (
    random_dpg_param,
    random_dpg_penalty,
    random_grid_dpg,
    random_metric,
    random_ncg,
    random_symsub_ncg,
)
from pnegames.instance import parse_instance
from pnegames.metric import build_product
from pnegames.reduce import check_symmetric_submodular, dpg_to_ncg, ncg_to_dpg, solve_ncg_symsub
from pnegames.solvers import brute_force_pne_set, minimize_potential_bruteforce, solve_path_dp

F = Fraction
KINDS = ["discrete", "path", "tree", "graph"]


@contextmanager
def criterion(number, title, limit=None):
    notes = {}
    t0 = time.perf_counter()
    ok = False
    try:
        yield notes
        elapsed = time.perf_counter() - t0
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        budget = f" / {limit}s" if limit is not None else ""
        extra = "".join(f"; {k}={v}" for k, v in notes.items())
        line = f"[{number:02d}] {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s{budget}{extra})"
        ACCEPTANCE_LINES.append(line)
        print(line)


def all_profiles(game):
    return itertools.product(*(range(c) for c in strategy_counts(game)))


def test_exact_potential_identity():
    with criterion(1, "exact potential identity", 30) as notes:
        rng = random.Random(101)
        makers = {
            "dpg_param": lambda n, m: random_dpg_param(rng, n, rng.random(), m, F(rng.randrange(10), 10), rng.choice(KINDS)),
            "dpg_penalty": lambda n, m: random_dpg_penalty(rng, n, rng.random(), m, rng.choice(KINDS)),
            "ncg": lambda n, m: random_ncg(rng, n, rng.random(), m, 9),
        }
        for kind, make in makers.items():
            count = 0
            while count < 1000:
                game = make(rng.randint(1, 12), rng.randint(1, 5))
                counts = strategy_counts(game)
                for _ in range(10):
                    x = tuple(rng.randrange(c) for c in counts)
                    i = rng.randrange(len(counts))
                    y = x[:i] + (rng.randrange(counts[i]),) + x[i + 1:]
                    assert potential(game, x) - potential(game, y) == player_cost(game, x, i) - player_cost(game, y, i)
                    count += 1
            notes[kind] = count


def test_brd_step_bound():
    with criterion(2, "BRD step bound on discrete metrics", 60) as notes:
        table = {F(0): F(1), F(1, 2): F(1, 2), F(2, 3): F(1, 3), F(3, 4): F(1, 4)}
        assert all(mu(a) == v for a, v in table.items())
        rng = random.Random(202)
        runs = worst = 0
        for k in range(200):
            alpha = list(table)[k % 4]
            game = random_dpg_param(rng, rng.randint(1, 12), rng.random(), rng.randint(1, 5), alpha)
            start = [rng.randrange(c) for c in strategy_counts(game)]
            for policy in POLICIES:
                x, trace = run_brd(game, start, policy)
                m = table[alpha]
                assert len(trace.steps) <= -(-trace.start_potential // m)
                assert all(s.drop >= m for s in trace.steps)
                assert is_pne(game, x)
                if trace.start_potential:
                    worst = max(worst, len(trace.steps) * m / trace.start_potential)
                runs += 1
        notes["runs"] = runs
        notes["max steps/bound"] = f"{float(worst):.3f}"


def path_graph_shuffled(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return PlayerGraph(n, [(perm[k], perm[k + 1]) for k in range(n - 1)])


def test_path_dp_optimality():
    with criterion(3, "path DP optimality and PNE-ness", 60) as notes:
        rng = random.Random(303)
        checked = 0
        for points in range(1, 6):
            players = 1
            while points ** players <= 4096 and players <= 12:
                for kind in KINDS:
                    for form in ("param", "penalty"):
                        g = path_graph_shuffled(rng, players)
                        if form == "param":
                            game = random_dpg_param(rng, players, 0, points, F(rng.randrange(8), 8), kind, graph=g)
                        else:
                            game = random_dpg_penalty(rng, players, 0, points, kind, graph=PlayerGraph(
                                players, g.edges, [F(rng.randint(0, 6), rng.randint(1, 3)) for _ in g.edges]))
                        x = solve_path_dp(game)
                        assert is_pne(game, x)
                        assert potential(game, x) == potential(game, minimize_potential_bruteforce(game))
                        checked += 1
                if points == 1:
                    break
                players += 1
        notes["instances"] = checked


def random_family(rng):
    while True:
        alpha = F(rng.randrange(4), 4)
        factors = [
            random_dpg_param(rng, rng.randint(1, 3), 0.7, rng.randint(1, 3), alpha, rng.choice(KINDS))
            for _ in range(rng.randint(2, 3))
        ]
        players = points = 1
        for f in factors:
            players *= f.graph.n
            points *= f.metric.point_count
        if players >= 2 and points >= 2 and points ** players <= 4096:
            return factors


def test_cartesian_composition():
    with criterion(4, "cartesian composition lands in the PNE set", 120) as notes:
        rng = random.Random(404)
        for _ in range(120):
            factors = random_family(rng)
            pnes = [rng.choice(brute_force_pne_set(f)) for f in factors]
            out = compose_pne(factors, pnes)
            assert out in brute_force_pne_set(cartesian_game(factors))
        notes["families"] = 120


def test_grid_pipeline():
    with criterion(5, "grid pipeline on 2x2 and 3x3 grids", 120) as notes:
        rng = random.Random(505)
        sizes = {}
        for dims in ([2, 2], [3, 3]):
            for alpha in (F(0), F(1, 2), F(2, 3), F(3, 4)):
                for kind in ("discrete", "path"):
                    game, grid, _ = random_grid_dpg(rng, dims, [2, 2], alpha, kind)
                    x = solve_grid(game, grid)
                    pnes = brute_force_pne_set(game)
                    assert x in pnes
                    sizes["x".join(map(str, dims))] = 4 ** grid.player_count
        notes["profiles"] = sizes


def test_psi_exact_on_one_products():
    with criterion(6, "psi equals phi on 1-product metrics") as notes:
        rng = random.Random(606)
        enumerated = sampled = 0
        for _ in range(60):
            metric, _ = build_product([random_metric(rng, rng.randint(1, 3), rng.choice(KINDS)) for _ in range(2)], 1)
            game = random_dpg_penalty(rng, rng.randint(1, 3), 0.6, None, metric=metric)
            family = decompose_penalties(game)
            for x in all_profiles(game):
                assert psi(family, x) == potential(game, x)
                enumerated += 1
        for _ in range(20):
            metric, _ = build_product(
                [random_metric(rng, rng.randint(2, 3), rng.choice(KINDS)) for _ in range(rng.randint(2, 3))], 1
            )
            game = random_dpg_penalty(rng, rng.randint(8, 12), 0.4, None, metric=metric)
            family = decompose_penalties(game)
            for _ in range(500):
                x = tuple(rng.randrange(metric.point_count) for _ in range(game.graph.n))
                assert psi(family, x) == potential(game, x)
                sampled += 1
        assert sampled >= 10_000
        notes["enumerated"] = enumerated
        notes["sampled"] = sampled


def golden(name):
    return parse_instance((resources.files("pnegames") / "data" / name).read_text(encoding="utf-8")).game


def test_counterexample():
    with criterion(7, "stored counterexample", 1) as notes:
        inf_game = golden("example1_inf_product.json")
        w = find_ordinal_violation(decompose_penalties(inf_game, require_one_product=False))
        assert w is not None and w.cost_after < w.cost_before and w.psi_after >= w.psi_before
        one_game = golden("example1_one_product.json")
        assert find_ordinal_violation(decompose_penalties(one_game)) is None
        notes["witness"] = f"x={w.profile} player {w.player}->{w.to_strategy}"


def test_reductions():
    with criterion(8, "reduction potential and PNE-set equality") as notes:
        rng = random.Random(808)
        forward = 0
        while forward < 100:
            n = rng.randint(2, 5)
            points = rng.randint(1, 3)
            edges = [(k, k + 1) for k in range(n - 1)]
            edges += [e for e in itertools.combinations(range(n), 2) if e not in edges and rng.random() < 0.3]
            perm = list(range(n))
            rng.shuffle(perm)
            edges = [(perm[a], perm[b]) for a, b in edges]
            graph = PlayerGraph(n, edges, [F(rng.randint(0, 6), rng.randint(1, 3)) for _ in edges])
            game = random_dpg_penalty(rng, n, 0, points, rng.choice(KINDS), graph=graph)
            if points ** n > 4096:
                continue
            ncg = dpg_to_ncg(game)
            assert all(potential(ncg, x) == potential(game, x) for x in all_profiles(game))
            assert brute_force_pne_set(ncg) == brute_force_pne_set(game)
            forward += 1
        backward = 0
        while backward < 100:
            ncg = random_symsub_ncg(rng, rng.randint(1, 10), rng.random(), 0, rng.randint(0, 8))
            report = check_symmetric_submodular(ncg)
            assert report.all_pass
            dpg = ncg_to_dpg(ncg, report)
            assert all(w >= 0 for w in dpg.graph.weights)
            assert all(potential(dpg, x) == potential(ncg, x) for x in all_profiles(ncg))
            assert brute_force_pne_set(dpg) == brute_force_pne_set(ncg)
            backward += 1
        notes["dpg->ncg"] = forward
        notes["ncg->dpg"] = backward


def test_large_ncg_solving():
    with criterion(9, "symmetric-submodular NCG solving up to n=200") as notes:
        rng = random.Random(909)
        moves = []
        ratio = []
        for k in range(200):
            n = 2 + (k * 198) // 199
            ncg = random_symsub_ncg(rng, n, min(1.0, 8 / n), 0, 9, max_degree=8)
            assert ncg.graph.max_degree() <= 8
            x, m = solve_ncg_symsub(ncg)
            assert is_pne(ncg, x)
            moves.append(m)
            ratio.append(m / n)
        notes["moves mean"] = f"{statistics.mean(moves):.1f}"
        notes["max"] = max(moves)
        notes["max moves/n"] = f"{max(ratio):.2f}"


def test_cli_determinism(tmp_path):
    with criterion(10, "CLI byte determinism") as notes:
        def cli(*args):
            proc = subprocess.run(
                [sys.executable, "-m", "pnegames.cli", *map(str, args)],
                capture_output=True, cwd=tmp_path,
            )
            return proc.returncode, proc.stdout, proc.stderr

        commands = [
            ("gen", "--kind", "dpg_discrete", "--seed", 7, "--n", 6, "--out", "dpg.json"),
            ("gen", "--kind", "grid_dpg", "--seed", 7, "--dims", "2,3", "--factor-sizes", "2,2", "--out", "grid.json"),
            ("gen", "--kind", "grid_dpg", "--seed", 7, "--dims", "6", "--factor-sizes", "3", "--out", "path.json"),
            ("gen", "--kind", "ncg_symsub", "--seed", 7, "--n", 8, "--out", "ncg.json"),
            ("solve", "--algo", "brd", "--in", "dpg.json", "--out", "r_brd.json", "--seed", 3),
            ("solve", "--algo", "brd", "--in", "dpg.json", "--out", "r_rr.json", "--seed", 3, "--policy", "round-robin"),
            ("solve", "--algo", "brute", "--in", "dpg.json", "--out", "r_brute.json"),
            ("solve", "--algo", "grid", "--in", "grid.json", "--out", "r_grid.json"),
            ("solve", "--algo", "path-dp", "--in", "path.json", "--out", "r_path.json"),
            ("solve", "--algo", "product-decompose", "--in", "grid.json", "--out", "r_prod.json"),
            ("solve", "--algo", "ncg-symsub", "--in", "ncg.json", "--out", "r_ncg.json"),
            ("verify", "--in", "dpg.json", "--profile", "r_brute.json"),
            ("potential", "--in", "grid.json", "--profile", "r_grid.json", "--which", "phi"),
            ("potential", "--in", "grid.json", "--profile", "r_grid.json", "--which", "psi"),
            ("reduce", "--to", "dpg", "--in", "ncg.json", "--out", "ncg_as_dpg.json"),
            ("reduce", "--to", "ncg", "--in", "ncg_as_dpg.json", "--out", "back.json"),
        ]
        for cmd in commands:
            outputs = []
            for _ in range(2):
                code, out, err = cli(*cmd)
                files = {p.name: p.read_bytes() for p in sorted(tmp_path.iterdir())}
                outputs.append((code, out, err, files))
            assert outputs[0] == outputs[1], f"{cmd[0]} output differs between runs"
            assert outputs[0][0] == 0, outputs[0][2].decode()
        notes["commands"] = len(commands)

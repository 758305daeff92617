"""Search for a small infinity-product instance where psi is not an ordinal potential.

The metric is the 4-point discrete metric written as the inf-product of two
discrete 2-point metrics; players use alpha = 3/4 in penalty form.  The
first instance (by player count, edge set, preference tuple) whose
lexicographically first ordinal violation also satisfies

  * x_i and y_i differ in exactly one coordinate t,
  * x_i^t = beta_i^t and x_i != beta_i != y_i,
  * D_i(x_i) > D_i(y_i),
  * D_i^t(x_i) - D_i^t(y_i) <= 1,

is written to ``src/pnegames/data`` together with its 1-product re-encoding.

    python scripts/find_example1_instance.py
"""
import itertools
from fractions import Fraction
from pathlib import Path

from pnegames.compose import decompose_penalties, find_ordinal_violation
from pnegames.core import PlayerGraph
from pnegames.games import DpgParam, DpgPenalty, param_to_penalty
from pnegames.instance import Instance, serialize_instance
from pnegames.metric import INF, build_discrete, build_product

ALPHA = Fraction(3, 4)
OUT = Path(__file__).resolve().parents[1] / "src" / "pnegames" / "data"


def bullets_hold(game, index, beta, w) -> bool:
    i, x = w.player, w.profile
    xi, yi, b = index.coords(x[i]), index.coords(w.to_strategy), index.coords(beta[i])
    diff = [t for t in range(2) if xi[t] != yi[t]]
    if len(diff) != 1:
        return False
    t = diff[0]
    if xi[t] != b[t] or x[i] == beta[i] or w.to_strategy == beta[i]:
        return False
    nbrs = game.graph.neighbors(i)
    d_x = sum(x[j] != x[i] for j in nbrs)
    d_y = sum(x[j] != w.to_strategy for j in nbrs)
    dt_x = sum(index.coords(x[j])[t] != xi[t] for j in nbrs)
    dt_y = sum(index.coords(x[j])[t] != yi[t] for j in nbrs)
    return d_x > d_y and dt_x - dt_y <= 1


def search():
    bit = build_discrete(["0", "1"])
    inf_metric, index = build_product([bit, bit], INF)
    for n in range(2, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for r in range(n - 1, len(pairs) + 1):
            for edges in itertools.combinations(pairs, r):
                graph = PlayerGraph(n, edges)
                if not graph.is_connected():
                    continue
                for beta in itertools.product(range(4), repeat=n):
                    game = param_to_penalty(DpgParam(graph, inf_metric, beta, ALPHA))
                    w = find_ordinal_violation(decompose_penalties(game, require_one_product=False))
                    if w is not None and bullets_hold(game, index, beta, w):
                        return game, w
    raise SystemExit("no instance found")


def main():
    game, w = search()
    bit = build_discrete(["0", "1"])
    one_metric, _ = build_product([bit, bit], 1)
    one = DpgPenalty(game.graph, one_metric, game.penalties)
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "example1_inf_product.json").write_text(serialize_instance(Instance(game)))
    (OUT / "example1_one_product.json").write_text(serialize_instance(Instance(one)))
    print(f"graph {game.graph.edges}, witness {w}")


if __name__ == "__main__":
    main()

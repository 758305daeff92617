"""Move counts of the two-strategy sweep on symmetric-submodular NCGs.

Each row aggregates random instances of one size.  The sweep's running time
is driven by the move count, which is reported next to n and n * max_degree.

    python scripts/ncg_symsub_moves.py --sizes 25,50,100,200 --per-size 50
"""
import argparse
import random
import statistics
import time

from pnegames.games import is_pne
from pnegames.generate import random_symsub_ncg
from pnegames.reduce import solve_ncg_symsub


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="25,50,100,200")
    ap.add_argument("--per-size", type=int, default=50)
    ap.add_argument("--max-degree", type=int, default=8)
    ap.add_argument("--cost-hi", type=int, default=9)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'n':>5} {'mean deg':>8} {'moves mean':>10} {'moves max':>9} {'max/n':>6} {'secs':>6}")
    for n in (int(v) for v in args.sizes.split(",")):
        moves, degs = [], []
        t0 = time.perf_counter()
        for _ in range(args.per_size):
            game = random_symsub_ncg(
                rng, n, min(1.0, args.max_degree / n), 0, args.cost_hi, max_degree=args.max_degree
            )
            x, m = solve_ncg_symsub(game)
            assert is_pne(game, x)
            moves.append(m)
            degs.append(2 * len(game.graph.edges) / n)
        secs = time.perf_counter() - t0
        print(
            f"{n:>5} {statistics.mean(degs):>8.2f} {statistics.mean(moves):>10.2f} "
            f"{max(moves):>9} {max(moves) / n:>6.2f} {secs:>6.2f}"
        )


if __name__ == "__main__":
    main()

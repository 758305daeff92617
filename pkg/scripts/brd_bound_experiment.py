"""Best-response step counts against the certified bound on discrete metrics.

For each alpha, runs both scan policies from random starts and reports the
mean and worst ratio of steps taken to ceil(start_potential / mu(alpha)).

    python scripts/brd_bound_experiment.py --instances 200 --seed 0
"""
import argparse
import math
import random
import statistics
from fractions import Fraction

from pnegames.dynamics import POLICIES, mu, run_brd
from pnegames.games import strategy_counts
from pnegames.generate import random_dpg_param


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--max-points", type=int, default=5)
    ap.add_argument("--alphas", default="0,1/2,2/3,3/4")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'alpha':>6} {'mu':>5} {'policy':>13} {'runs':>5} {'steps':>7} {'ratio mean':>10} {'ratio max':>9}")
    for text in args.alphas.split(","):
        alpha = Fraction(text)
        m = mu(alpha)
        for policy in POLICIES:
            ratios, steps = [], []
            for _ in range(args.instances):
                game = random_dpg_param(
                    rng, rng.randint(1, args.max_n), rng.random(), rng.randint(1, args.max_points), alpha
                )
                start = [rng.randrange(c) for c in strategy_counts(game)]
                _, trace = run_brd(game, start, policy)
                steps.append(len(trace.steps))
                bound = math.ceil(trace.start_potential / m)
                if bound:
                    ratios.append(len(trace.steps) / bound)
            print(
                f"{str(alpha):>6} {str(m):>5} {policy:>13} {args.instances:>5} "
                f"{statistics.mean(steps):>7.2f} {statistics.mean(ratios):>10.3f} {max(ratios):>9.3f}"
            )


if __name__ == "__main__":
    main()

"""Best-response dynamics with a step-bound certificate on discrete metrics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import Profile, as_rational
from .games import DpgParam, Game, best_response, check_profile, player_cost, potential

POLICIES = ("lowest-index", "round-robin")


class BoundViolation(RuntimeError):
    pass


def mu(alpha) -> Fraction:
    """Minimum potential drop of one best-response step on a discrete metric."""
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha must satisfy 0 <= alpha < 1, got {alpha}")
    return min(case_bounds(alpha))


def case_bounds(alpha: Fraction) -> Tuple[Fraction, Fraction, Fraction]:
    """Lower bounds on the drop for (neither endpoint preferred, moving onto
    the preferred point, moving off it)."""
    ratio = alpha / (1 - alpha)
    return (
        1 - alpha,
        alpha + (1 - alpha) * math.floor(1 - ratio),
        -alpha + (1 - alpha) * math.floor(1 + ratio),
    )


def disagreement_count(game: DpgParam, x: Sequence[int], i: int) -> int:
    return sum(1 for j in game.graph.neighbors(i) if x[j] != x[i])


@dataclass(frozen=True)
class BrdStep:
    player: int
    from_strategy: int
    to_strategy: int
    drop: Fraction
    potential_after: Fraction


@dataclass
class BrdTrace:
    start: Profile
    start_potential: Fraction
    bound: Optional[Fraction]
    mu: Optional[Fraction]
    policy: str
    steps: List[BrdStep] = field(default_factory=list)
    final: Profile = ()

    @property
    def step_bound(self) -> Optional[int]:
        """Integer step budget ``ceil(start_potential / mu)``."""
        return None if self.bound is None else math.ceil(self.bound)

    def to_json(self) -> dict:
        def q(v):
            return None if v is None else [v.numerator, v.denominator]

        return {
            "policy": self.policy,
            "start": list(self.start),
            "start_potential": q(self.start_potential),
            "mu": q(self.mu),
            "bound": q(self.bound),
            "steps": [
                {
                    "player": s.player,
                    "from": s.from_strategy,
                    "to": s.to_strategy,
                    "drop": q(s.drop),
                    "potential_after": q(s.potential_after),
                }
                for s in self.steps
            ],
            "final": list(self.final),
        }


def step_case(game: DpgParam, step: BrdStep) -> int:
    """0: neither endpoint is the preferred point, 1: moves onto it, 2: moves off it."""
    b = game.beta[step.player]
    if step.to_strategy == b:
        return 1
    if step.from_strategy == b:
        return 2
    return 0


def _improving_move(game: Game, x: List[int], i: int):
    current = player_cost(game, x, i)
    y = best_response(game, x, i)
    if y == x[i]:
        return None
    x_new = list(x)
    x_new[i] = y
    new = player_cost(game, x_new, i)
    # a tie with a lower-indexed strategy is not an improvement
    return (y, current - new) if new < current else None


def run_brd(
    game: Game,
    start: Sequence[int],
    policy: str = "lowest-index",
    max_steps: Optional[int] = None,
) -> Tuple[Profile, BrdTrace]:
    """Run best-response dynamics from ``start`` until no player can improve.

    Each step moves one improving player to her best response.  Under
    ``lowest-index`` the mover is the lowest-indexed improving player;
    under ``round-robin`` the scan resumes after the previous mover.

    On a discrete-metric parameter game the trace carries the bound
    ``start_potential / mu(alpha)`` and the run raises ``BoundViolation`` if
    a step drops the potential by less than ``mu`` or the step count
    exceeds the bound.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; choose from {POLICIES}")
    x = list(check_profile(game, start))
    n = game.graph.n
    phi = potential(game, x)
    certified = isinstance(game, DpgParam) and game.metric.is_discrete
    m = mu(game.alpha) if certified else None
    trace = BrdTrace(tuple(x), phi, phi / m if certified else None, m, policy)

    cursor = 0
    while True:
        move = None
        for offset in range(n):
            i = (cursor + offset) % n if policy == "round-robin" else offset
            move = _improving_move(game, x, i)
            if move is not None:
                break
        if move is None:
            break
        y, drop = move
        step_from = x[i]
        x[i] = y
        phi = potential(game, x)
        trace.steps.append(BrdStep(i, step_from, y, drop, phi))
        cursor = i + 1
        if certified:
            if drop < m:
                raise BoundViolation(f"step {len(trace.steps)} dropped {drop} < mu = {m}")
            if len(trace.steps) > trace.step_bound:
                raise BoundViolation(f"exceeded {trace.step_bound} steps")
        if max_steps is not None and len(trace.steps) >= max_steps:
            break
    trace.final = tuple(x)
    return trace.final, trace

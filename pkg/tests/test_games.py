from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pnegames.core import PlayerGraph
from pnegames.games import (
    Deviation,
    DpgParam,
    DpgPenalty,
    Ncg,
    best_response,
    find_deviation,
    is_pne,
    local_tables,
    param_to_penalty,
    player_cost,
    potential,
    strategy_counts,
)
from pnegames.metric import build_discrete

from strategies import dpg_params, game_and_profile

F = Fraction
EDGE = PlayerGraph(2, [(0, 1)])


@pytest.fixture
def two_player_penalty():
    # p_1(b) = 1, p_2(a) = 1, w = 1, discrete {a, b}
    return DpgPenalty(EDGE, build_discrete("ab"), [[0, 1], [1, 0]])


def test_param_cost_example():
    # player 0 prefers a, plays b; neighbors play a and b
    g = PlayerGraph(3, [(0, 1), (0, 2)])
    game = DpgParam(g, build_discrete("ab"), (0, 0, 0), F(1, 2))
    assert player_cost(game, (1, 0, 1), 0) == 1


def test_penalty_cost_isolated_player():
    game = DpgPenalty(PlayerGraph(1), build_discrete("ab"), [[0, 1]])
    assert player_cost(game, (1,), 0) == 0


def test_ncg_single_edge_cost():
    game = Ncg(EDGE, (2, 2), [[[3, 4], [4, 1]]])
    assert player_cost(game, (0, 0), 0) == player_cost(game, (0, 0), 1) == 3
    assert potential(game, (0, 0)) == 3


def test_ncg_reads_table_transposed():
    game = Ncg(EDGE, (2, 3), [[[0, 1, 2], [3, 4, 5]]])
    assert player_cost(game, (1, 2), 0) == 5
    assert player_cost(game, (1, 2), 1) == 5


def test_potential_table(two_player_penalty):
    phi = {x: potential(two_player_penalty, x) for x in [(0, 0), (0, 1), (1, 0), (1, 1)]}
    assert phi == {(0, 0): 1, (0, 1): 3, (1, 0): 1, (1, 1): 1}


def test_edgeless_potential_is_own_terms():
    game = DpgPenalty(PlayerGraph(2), build_discrete("abc"), [[1, 2, 0], [0, 0, 5]])
    assert potential(game, (0, 2)) == (2 + 0) + (0 + 0)
    assert potential(game, (1, 0)) == (1 + 0) + (5)


def test_deviation_ordering_lowest_player(two_player_penalty):
    # both players improve at (a, b); lowest index wins
    assert find_deviation(two_player_penalty, (0, 1)) == Deviation(0, 0, 1, F(2), F(0))
    assert player_cost(two_player_penalty, (0, 1), 1) == 2
    assert player_cost(two_player_penalty, (0, 0), 1) == 0


def test_pne_example(two_player_penalty):
    assert is_pne(two_player_penalty, (0, 0))
    assert player_cost(two_player_penalty, (0, 0), 0) == 1
    assert player_cost(two_player_penalty, (1, 0), 0) == 1


def test_single_player_argmin_is_pne():
    game = DpgPenalty(PlayerGraph(1), build_discrete("abc"), [[2, 0, 1]])
    x = (best_response(game, (0,), 0),)
    assert is_pne(game, x)


def test_best_response_examples():
    lone = DpgParam(PlayerGraph(1), build_discrete("abc"), (2,), F(1, 3))
    assert best_response(lone, (0,), 0) == 2
    flat = DpgPenalty(PlayerGraph(1), build_discrete("abc"), [[0, 0, 0]])
    assert best_response(flat, (2,), 0) == 0
    game = DpgParam(EDGE, build_discrete("ab"), (0, 1), F(1, 2))
    assert best_response(game, (1, 0), 0) == 0
    assert player_cost(game, (0, 0), 0) == 0


@pytest.mark.parametrize(
    "build",
    [
        lambda: DpgParam(EDGE, build_discrete("ab"), (0, 2), F(1, 2)),
        lambda: DpgParam(EDGE, build_discrete("ab"), (0, 1), F(1)),
        lambda: DpgParam(PlayerGraph(2, [(0, 1)], [2]), build_discrete("ab"), (0, 1), F(0)),
        lambda: DpgPenalty(EDGE, build_discrete("ab"), [[0, -1], [0, 0]]),
        lambda: DpgPenalty(EDGE, build_discrete("ab"), [[0, 1]]),
        lambda: Ncg(EDGE, (2, 2), [[[0, 1]]]),
        lambda: Ncg(EDGE, (2, 2), [[[0, 1], [1, -1]]]),
    ],
)
def test_invalid_games_rejected(build):
    with pytest.raises(ValueError):
        build()


def test_bad_player_and_profile():
    game = DpgParam(EDGE, build_discrete("ab"), (0, 1), F(1, 2))
    with pytest.raises(ValueError):
        player_cost(game, (0, 0), 2)
    with pytest.raises(ValueError):
        find_deviation(game, (0, 2))


@given(game_and_profile(), st.data())
def test_exact_potential_identity(gx, data):
    game, x = gx
    i = data.draw(st.integers(0, game.graph.n - 1))
    y = data.draw(st.integers(0, strategy_counts(game)[i] - 1))
    x2 = x[:i] + (y,) + x[i + 1:]
    assert potential(game, x) - potential(game, x2) == player_cost(game, x, i) - player_cost(game, x2, i)


@given(game_and_profile())
def test_pne_iff_local_minimum(gx):
    game, x = gx
    phi = potential(game, x)
    local_min = all(
        potential(game, x[:i] + (s,) + x[i + 1:]) >= phi
        for i in range(game.graph.n)
        for s in range(strategy_counts(game)[i])
    )
    assert is_pne(game, x) == local_min


@given(game_and_profile())
def test_best_response_never_worse(gx):
    game, x = gx
    dev = find_deviation(game, x)
    for i in range(game.graph.n):
        y = best_response(game, x, i)
        before = player_cost(game, x, i)
        after = player_cost(game, x[:i] + (y,) + x[i + 1:], i)
        can_improve = any(
            player_cost(game, x[:i] + (s,) + x[i + 1:], i) < before
            for s in range(strategy_counts(game)[i])
        )
        assert after <= before
        assert (after < before) == can_improve
        if dev is not None and dev.player == i:
            assert can_improve
    assert (dev is None) == is_pne(game, x)


@given(game_and_profile())
def test_local_tables_reproduce_costs(gx):
    game, x = gx
    unary, pair = local_tables(game)
    g = game.graph
    for i in range(g.n):
        c = unary[i][x[i]] + sum(
            (pair[k][x[i]][x[j]] if i < j else pair[k][x[j]][x[i]]) for j, k in g.adjacency[i]
        )
        assert c == player_cost(game, x, i)
    total = sum(unary[i][x[i]] for i in range(g.n)) + sum(
        pair[k][x[i]][x[j]] for k, (i, j) in enumerate(g.edges)
    )
    assert total == potential(game, x)


@given(game_and_profile(dpg_params()))
def test_param_to_penalty_preserves_costs(gx):
    game, x = gx
    pen = param_to_penalty(game)
    assert potential(pen, x) == potential(game, x)
    assert all(player_cost(pen, x, i) == player_cost(game, x, i) for i in range(game.graph.n))

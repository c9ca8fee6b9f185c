"""Pong and Surround physics, views and oracles."""

import pytest

import naive
from criteria import PONG_FRAMES, surround_example_grid
from sampling import sample_states

from gamearena.games import get_game
from gamearena.games.base import Outcome, Seat
from gamearena.games.pong import (
    DOWN,
    MID_Y,
    STAY,
    UP,
    DegenerateTrajectory,
    Frame,
    PongState,
    fold_into_court,
    new_game,
    pong_observe,
    pong_oracle_direction,
    pong_oracle_intercept_y,
    pong_step,
    serve_velocity,
    simulate_intercept,
)
from gamearena.games.surround import (
    EMPTY,
    MY_HEAD,
    MY_LAST,
    OPP_HEAD,
    OPP_LAST,
    WALL,
    SurroundState,
    initial_state as surround_start,
    region_size,
    surround_oracle_adjacent,
    surround_oracle_safety,
    surround_oracle_valid_actions,
    surround_outcome,
    surround_step,
    view_grid,
)


# -- pong ----------------------------------------------------------------------
def test_pong_worked_example():
    assert pong_oracle_direction(PONG_FRAMES).value == "Right Up"
    assert pong_oracle_intercept_y(PONG_FRAMES) == 78


def test_pong_ball_moving_left_targets_mid_court():
    frames = [dict(f, ball_x=200 - f["ball_x"]) for f in PONG_FRAMES]
    assert pong_oracle_direction(frames).value == "Left Up"
    assert pong_oracle_intercept_y(frames) == MID_Y


def test_pong_degenerate_frames():
    still = [dict(PONG_FRAMES[-1]), dict(PONG_FRAMES[-1])]
    with pytest.raises(DegenerateTrajectory):
        pong_oracle_direction(still)
    with pytest.raises(DegenerateTrajectory):
        pong_oracle_intercept_y(still[:1])


@pytest.mark.parametrize("raw, folded", [(100, 100), (274, 78), (-10, 42), (176, 176), (16, 16), (500, 172)])
def test_fold_into_court(raw, folded):
    assert fold_into_court(raw) == folded


def test_intercept_agrees_with_naive_on_lattice():
    for x in range(24, 140, 7):
        for y in range(16, 177, 9):
            for dx in (2, 4):
                for dy in (-8, -4, -2, 2, 4, 8):
                    frames = [{"ball_x": x - dx, "ball_y": y - dy}, {"ball_x": x, "ball_y": y}]
                    assert pong_oracle_intercept_y(frames) == naive.pong_intercept(frames)


def test_intercept_matches_frame_stepping_when_landing_on_the_plane():
    # x reaches 140 exactly when (140 - x) is a multiple of dx; the stepped ball then sits on the plane
    for x, y, dx, dy in [(80, 96, 4, 8), (100, 20, 4, -4), (60, 170, 2, 2), (136, 100, 4, 8)]:
        frames = [{"ball_x": x - dx, "ball_y": y - dy}, {"ball_x": x, "ball_y": y}]
        assert pong_oracle_intercept_y(frames) == simulate_intercept(x, y, dx, dy)


def test_pong_wall_bounce_and_paddle_return():
    state = PongState((100, 172), (4, 8), 40, 40, (0, 0), 0, 0, 1, ())
    nxt = pong_step(state, STAY, STAY)
    assert nxt.ball == (104, 172) and nxt.velocity == (4, -8)
    at_paddle = PongState((136, 100), (4, 0), 92, 40, (0, 0), 0, 0, 1, ())
    assert pong_step(at_paddle, STAY, STAY).velocity[0] == -4


def test_pong_miss_scores_and_reserves():
    state = PongState((136, 170), (4, 2), 16, 16, (0, 0), 0, 7, 1, ())
    nxt = pong_step(state, STAY, STAY)
    assert nxt.score == (0, 1)
    assert nxt.ball == (80, 96) and nxt.velocity == serve_velocity(7, 1)
    assert len(nxt.history) == 1


def test_pong_paddles_clamp():
    state = new_game(0)
    for _ in range(60):
        state = pong_step(state, UP, DOWN)
    assert state.right_lo == 160 and state.left_lo == 16


def test_pong_observation_pads_and_mirrors():
    state = new_game(3)
    first = pong_observe(state, Seat.FIRST)
    assert len(first) == 3 and first[0] == first[-1]
    second = pong_observe(state, Seat.SECOND)
    assert second[0]["ball_x"] == 160 - first[0]["ball_x"]
    assert list(first[0]) == ["ball_x", "ball_y", "player_x", "player_y", "opponent_x", "opponent_y",
                              "upper_bound", "lower_bound"]


def test_pong_view_swaps_paddles():
    view = Frame(50, 60, 30, 70).view(Seat.SECOND)
    assert view["player_y"] == [70, 86] and view["opponent_y"] == [30, 46] and view["ball_x"] == 110


def test_pong_truths_match_naive():
    game = get_game("pong")
    checked = 0
    for state, seat in sample_states("pong", 600, seed=5):
        truths = game.truths(state, seat)
        if truths[0].value is None:
            continue
        frames = pong_observe(state, seat)
        assert truths[0].value == naive.pong_direction(frames)
        assert truths[1].value == naive.pong_intercept(frames)
        checked += 1
    assert checked > 300


def test_pong_game_ends_at_five():
    game = get_game("pong")
    state = PongState((136, 170), (4, 2), 16, 16, (0, 4), 0, 7, 1, ())
    state = game.apply(state, {Seat.FIRST: STAY, Seat.SECOND: STAY})
    assert game.outcome(state) is Outcome.SECOND_WINS


# -- surround ------------------------------------------------------------------
def test_surround_worked_example():
    grid, head = surround_example_grid()
    assert region_size(grid, (1, 25)) == 4
    assert surround_oracle_safety(grid, head) == {"Left": "Unsafe", "Right": "Unsafe"}
    assert surround_oracle_valid_actions(grid, head) == {"Left", "Right"}


def test_surround_initial_view():
    state = surround_start()
    grid = view_grid(state, Seat.FIRST)
    assert grid[10][10] == MY_HEAD and grid[10][9] == MY_LAST
    assert grid[10][29] == OPP_HEAD and grid[10][30] == OPP_LAST
    assert grid[0][5] == WALL and grid[5][5] == EMPTY
    other = view_grid(state, Seat.SECOND)
    assert other[10][29] == MY_HEAD and other[10][10] == OPP_HEAD
    assert surround_oracle_adjacent(grid, (10, 10)) == {"Up": 0, "Down": 0, "Left": MY_LAST, "Right": 0}


def test_surround_out_of_grid_reads_minus_one():
    grid = [[0] * 40 for _ in range(20)]
    assert surround_oracle_adjacent(grid, (0, 0))["Up"] == -1


def test_surround_crashes():
    state = surround_start()
    back = surround_step(state, "Left", "Up")
    assert back.crashed == (True, False)
    assert surround_outcome(back) is Outcome.SECOND_WINS
    close = SurroundState((((10, 18), (10, 19)), ((10, 22), (10, 21))))
    head_on = surround_step(close, "Right", "Left")
    assert head_on.crashed == (True, True) and surround_outcome(head_on) is Outcome.DRAW


def test_surround_region_limit_stops_early():
    grid = [[0] * 40 for _ in range(20)]
    assert region_size(grid, (5, 5), limit=10) == 10
    assert region_size(grid, (5, 5)) == 800


def test_surround_truths_match_naive():
    game = get_game("surround")
    for state, seat in sample_states("surround", 400, seed=6):
        grid, head = view_grid(state, seat), state.head(seat)
        values = [t.value for t in game.truths(state, seat)]
        assert values == [naive.surround_adjacent(grid, head), naive.surround_valid(grid, head),
                          naive.surround_safety(grid, head)]

"""Othello, Checkers, TicTacToe and Connect4 rules and oracles."""

import random

import pytest

import naive
from sampling import sample_states

from gamearena.games import get_game
from gamearena.games.base import IllegalMove, Outcome, Seat
from gamearena.games.checkers import (
    CheckersMove,
    checkers_apply,
    checkers_legal_moves,
    checkers_oracle_new_king,
    checkers_oracle_two_for_one,
    checkers_oracle_worthless_die,
    checkers_outcome,
    make_state,
)
from gamearena.games.grid import (
    ForWhom,
    empty_grid,
    grid_apply,
    grid_from_rows,
    grid_oracle_winning_moves,
    grid_outcome,
    minimax_value,
)
from gamearena.games.othello import (
    initial_state as othello_start,
    othello_apply,
    othello_legal_moves,
    othello_oracle_corner,
    othello_oracle_wedges,
    othello_outcome,
    parse_square,
    square_name,
)


def othello_from(rows, to_move):
    from gamearena.games.othello import OthelloState

    return OthelloState(tuple(tuple(r) for r in rows), to_move)


# -- othello -------------------------------------------------------------------
def test_othello_opening_moves():
    assert sorted(square_name(m) for m in othello_legal_moves(othello_start())) == ["(C,5)", "(D,6)", "(E,3)", "(F,4)"]


def test_othello_flip_and_counts():
    after = othello_apply(othello_start(), parse_square("(C,5)"))
    assert after.at(*parse_square("(D,5)")) == "B"
    assert after.count("B") == 4 and after.count("W") == 1
    assert after.to_move == "W"


def test_othello_square_names_round_trip():
    for col in range(8):
        for row in range(8):
            assert parse_square(square_name((col, row))) == (col, row)


def test_othello_wedge_worked_example():
    rows = [["O"] * 8 for _ in range(8)]
    rows[0][2] = rows[0][4] = "B"  # (C,1) and (E,1)
    rows[1][3] = "B"  # (D,2), flipped by W at (D,1)
    rows[2][3] = "W"  # (D,3)
    state = othello_from(rows, "W")
    assert (3, 0) in othello_legal_moves(state)
    assert othello_oracle_wedges(state) == {(3, 0)}
    assert othello_oracle_corner(state) is False


def test_othello_even_gap_is_not_a_wedge():
    rows = [["O"] * 8 for _ in range(8)]
    rows[0][1] = rows[0][4] = "B"  # gap C1, D1 (length 2)
    rows[1][2] = rows[1][3] = "B"
    rows[2][2] = rows[2][3] = "W"
    state = othello_from(rows, "W")
    assert {(2, 0), (3, 0)} <= set(othello_legal_moves(state))
    assert othello_oracle_wedges(state) == set()


def test_othello_corner_available():
    rows = [["O"] * 8 for _ in range(8)]
    rows[0][1], rows[0][2] = "W", "B"
    state = othello_from(rows, "B")
    assert othello_oracle_corner(state) is True


def test_othello_pass_and_end():
    rows = [["B"] * 8 for _ in range(8)]
    rows[7][7] = "O"
    state = othello_from(rows, "W")
    assert othello_legal_moves(state) == []
    assert othello_outcome(state) is Outcome.FIRST_WINS


def test_othello_oracles_match_naive():
    for state, _ in sample_states("othello", 300, seed=1):
        assert othello_oracle_corner(state) == naive.othello_corner(state.board, state.to_move)
        assert othello_oracle_wedges(state) == naive.othello_wedges(state.board, state.to_move)
        assert set(othello_legal_moves(state)) == naive.othello_legal(state.board, state.to_move) or \
            not othello_legal_moves(state)


# -- checkers ------------------------------------------------------------------
def test_checkers_opening():
    state = get_game("checkers").initial_state(0)
    moves = checkers_legal_moves(state)
    assert len(moves) == 7
    assert all(m.start[0] == 5 and m.end[0] == 4 for m in moves)


def test_checkers_capture_is_compulsory():
    state = make_state({(5, 2): "b", (4, 3): "w", (5, 6): "b"}, "b")
    assert [str(m) for m in checkers_legal_moves(state)] == ["(5,2)->(3,4)"]


def test_checkers_multi_jump():
    state = make_state({(6, 1): "b", (5, 2): "w", (3, 4): "w", (0, 7): "w"}, "b")
    (move,) = checkers_legal_moves(state)
    assert move.path == ((6, 1), (4, 3), (2, 5)) and len(move.captured) == 2


def test_checkers_crowning_ends_the_chain():
    state = make_state({(2, 3): "b", (1, 4): "w", (1, 6): "w", (7, 0): "w"}, "b")
    moves = checkers_legal_moves(state)
    assert [str(m) for m in moves] == ["(2,3)->(0,5)"]
    after = checkers_apply(state, moves[0])
    assert after.at((0, 5)) == "B" and after.at((1, 6)) == "w"
    assert {m.path for m in checkers_oracle_new_king(state)} == {((2, 3), (0, 5))}


def test_checkers_king_moves_backwards():
    state = make_state({(3, 3): "B", (7, 7): "w"}, "b")
    ends = {m.end for m in checkers_legal_moves(state)}
    assert ends == {(2, 2), (2, 4), (4, 2), (4, 4)}


def test_checkers_no_moves_loses():
    state = make_state({(0, 1): "b", (7, 0): "w"}, "b")
    assert checkers_legal_moves(state) == []
    assert checkers_outcome(state) is Outcome.SECOND_WINS


def test_checkers_illegal_move_rejected():
    with pytest.raises(IllegalMove):
        checkers_apply(get_game("checkers").initial_state(0), CheckersMove(((5, 0), (3, 2))))


def test_checkers_worked_examples():
    worthless = make_state({(1, 4): "w", (3, 2): "b"}, "w")
    assert ((1, 4), (2, 3)) in {m.path for m in checkers_oracle_worthless_die(worthless)}
    covered = make_state({(1, 4): "w", (0, 5): "w", (3, 2): "b"}, "w")
    assert ((1, 4), (2, 3)) not in {m.path for m in checkers_oracle_worthless_die(covered)}
    shot = make_state({(1, 4): "w", (3, 4): "w", (3, 6): "w", (5, 4): "b", (5, 6): "b", (6, 7): "b"}, "b")
    assert ((5, 6), (4, 5)) in {m.path for m in checkers_oracle_two_for_one(shot)}


def test_checkers_draw_by_quiet_moves():
    state = make_state({(3, 3): "B", (4, 6): "W"}, "b", halfmove=40)
    assert checkers_outcome(state) is Outcome.DRAW


def test_checkers_oracles_match_naive():
    for state, _ in sample_states("checkers", 200, seed=2):
        legal = {(m.path, m.captured) for m in checkers_legal_moves(state)}
        assert legal == set(naive.checkers_moves(state.board, state.to_move))
        assert {m.path for m in checkers_oracle_worthless_die(state)} == naive.checkers_worthless(state.board, state.to_move)
        assert {m.path for m in checkers_oracle_two_for_one(state)} == naive.checkers_two_for_one(state.board, state.to_move)


# -- line games ----------------------------------------------------------------
def test_tictactoe_worked_example():
    state = grid_from_rows(["_OX", "XOX", "OX_"], "O", gravity=False, win_length=3)
    assert grid_oracle_winning_moves(state, ForWhom.OPPONENT) == {(2, 2)}
    assert grid_oracle_winning_moves(state, ForWhom.MOVER) == set()


def test_connect4_worked_example():
    top_first = ["___O___", "___X___", "_O_OOX_", "_OXXXO_", "XXXOXO_", "XOXXOO_"]
    state = grid_from_rows(list(reversed(top_first)), "X", gravity=True, win_length=4)
    assert (3, 2) in grid_oracle_winning_moves(state, ForWhom.MOVER)
    assert (3, 2) in grid_oracle_winning_moves(state, ForWhom.OPPONENT)


def test_connect4_gravity_and_render_order():
    game = get_game("connect4")
    state = game.initial_state(0)
    state = game.apply(state, {Seat.FIRST: (0, 3)})
    assert state.at(0, 3) == "X"
    assert (1, 3) in game.legal_actions(state, Seat.SECOND)
    board_lines = [ln for ln in game.render(state, Seat.FIRST).splitlines() if ln.startswith("(")]
    assert board_lines[0].startswith("(5,0)") and board_lines[-1].startswith("(0,0)")


def test_tictactoe_win_and_draw():
    s = empty_grid(3, 3, False, 3)
    for move in [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)]:
        s = grid_apply(s, move)
    assert grid_outcome(s) is Outcome.FIRST_WINS
    draw = grid_from_rows(["XOX", "XOO", "OXX"], "O", gravity=False, win_length=3)
    assert grid_outcome(draw) is Outcome.DRAW


def test_tictactoe_is_a_draw_with_perfect_play():
    assert minimax_value(empty_grid(3, 3, False, 3)) == 0


@pytest.mark.parametrize("game_id", ["tictactoe", "connect4"])
def test_line_oracles_match_naive(game_id):
    for state, _ in sample_states(game_id, 1500, seed=3):
        them = "O" if state.to_move == "X" else "X"
        assert grid_oracle_winning_moves(state, ForWhom.MOVER) == naive.grid_winning(
            state.cells, state.gravity, state.win_length, state.to_move)
        assert grid_oracle_winning_moves(state, ForWhom.OPPONENT) == naive.grid_winning(
            state.cells, state.gravity, state.win_length, them)


@pytest.mark.parametrize("game_id", ["othello", "checkers", "tictactoe", "connect4"])
def test_action_text_resolves_back(game_id):
    game = get_game(game_id)
    rng = random.Random(4)
    for state, seat in sample_states(game_id, 100, seed=4):
        action = game.random_action(state, seat, rng)
        assert game.resolve_text(state, seat, game.action_text(action)) == action

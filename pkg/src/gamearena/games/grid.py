"""TicTacToe (3x3, three in a row) and Connect4 (6x7 with gravity, four in a row)."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import lru_cache

from .base import Game, IllegalMove, Outcome, Seat, Subproblem, SubproblemTruth

EMPTY, X, O = "_", "X", "O"
DIRECTIONS = ((0, 1), (1, 0), (1, 1), (1, -1))


class ForWhom(enum.Enum):
    MOVER = "mover"
    OPPONENT = "opponent"


@dataclass(frozen=True)
class GridState:
    rows: int
    cols: int
    cells: tuple[tuple[str, ...], ...]
    to_move: str
    gravity: bool
    win_length: int
    winner: str | None = None

    def at(self, r: int, c: int) -> str:
        return self.cells[r][c]

    @property
    def opponent(self) -> str:
        return O if self.to_move == X else X


def empty_grid(rows: int, cols: int, gravity: bool, win_length: int) -> GridState:
    return GridState(rows, cols, tuple((EMPTY,) * cols for _ in range(rows)), X, gravity, win_length)


def grid_from_rows(rows: list[str], to_move: str, gravity: bool, win_length: int) -> GridState:
    """Build a state from strings, ``rows[0]`` being row 0."""
    cells = tuple(tuple(row) for row in rows)
    return GridState(len(cells), len(cells[0]), cells, to_move, gravity, win_length)


def grid_legal_moves(state: GridState) -> list[tuple[int, int]]:
    if state.winner is not None:
        return []
    if state.gravity:
        moves = []
        for c in range(state.cols):
            for r in range(state.rows):
                if state.cells[r][c] == EMPTY:
                    moves.append((r, c))
                    break
        return moves
    return [(r, c) for r in range(state.rows) for c in range(state.cols) if state.cells[r][c] == EMPTY]


def _completes_line(state: GridState, r: int, c: int, mark: str) -> bool:
    for dr, dc in DIRECTIONS:
        count = 1
        for sign in (1, -1):
            rr, cc = r + sign * dr, c + sign * dc
            while 0 <= rr < state.rows and 0 <= cc < state.cols and state.cells[rr][cc] == mark:
                count += 1
                rr += sign * dr
                cc += sign * dc
        if count >= state.win_length:
            return True
    return False


def grid_apply(state: GridState, move: tuple[int, int]) -> GridState:
    if move not in grid_legal_moves(state):
        raise IllegalMove(f"{move} is not a legal move")
    r, c = move
    row = list(state.cells[r])
    row[c] = state.to_move
    cells = state.cells[:r] + (tuple(row),) + state.cells[r + 1 :]
    placed = replace(state, cells=cells)
    winner = state.to_move if _completes_line(placed, r, c, state.to_move) else None
    return replace(placed, to_move=state.opponent, winner=winner)


def grid_outcome(state: GridState) -> Outcome:
    if state.winner == X:
        return Outcome.FIRST_WINS
    if state.winner == O:
        return Outcome.SECOND_WINS
    if all(cell != EMPTY for row in state.cells for cell in row):
        return Outcome.DRAW
    return Outcome.ONGOING


def grid_oracle_winning_moves(state: GridState, for_whom: ForWhom) -> set[tuple[int, int]]:
    """Legal squares where ``for_whom``'s mark would complete a line."""
    mark = state.to_move if for_whom is ForWhom.MOVER else state.opponent
    return {(r, c) for r, c in grid_legal_moves(state) if _completes_line(state, r, c, mark)}


def render_board(state: GridState) -> str:
    order = range(state.rows - 1, -1, -1) if state.gravity else range(state.rows)
    return "\n".join(
        " ".join(f"({r},{c}):{state.cells[r][c]}" for c in range(state.cols)) for r in order
    )


def coord_text(move: tuple[int, int]) -> str:
    return f"({move[0]},{move[1]})"


@lru_cache(maxsize=None)
def _minimax(state: GridState) -> int:
    """Value for the side to move: 1 win, 0 draw, -1 loss (3x3 only)."""
    result = grid_outcome(state)
    if result is not Outcome.ONGOING:
        if result is Outcome.DRAW:
            return 0
        return -1  # the previous mover just won
    return max(-_minimax(grid_apply(state, m)) for m in grid_legal_moves(state))


def minimax_value(state: GridState) -> int:
    return _minimax(state)


class _GridGame(Game):
    rows = cols = win_length = 0
    gravity = False

    def initial_state(self, seed: int) -> GridState:
        return empty_grid(self.rows, self.cols, self.gravity, self.win_length)

    def to_move(self, state: GridState) -> tuple[Seat, ...]:
        return (Seat.FIRST if state.to_move == X else Seat.SECOND,)

    def legal_actions(self, state: GridState, seat: Seat) -> list:
        return grid_legal_moves(state)

    def apply(self, state: GridState, actions: dict) -> GridState:
        (action,) = actions.values()
        return grid_apply(state, action)

    def outcome(self, state: GridState) -> Outcome:
        return grid_outcome(state)

    def render(self, state: GridState, seat: Seat) -> str:
        mark = X if seat is Seat.FIRST else O
        legal = [coord_text(m) for m in grid_legal_moves(state)]
        return f"You are player {mark}.\nCurrent Game Board:\n{render_board(state)}\nAll legal moves: {legal}"

    def action_text(self, action) -> str:
        return coord_text(action)

    def truths(self, state: GridState, seat: Seat) -> list[SubproblemTruth]:
        return [
            SubproblemTruth(1, frozenset(grid_oracle_winning_moves(state, ForWhom.MOVER))),
            SubproblemTruth(2, frozenset(grid_oracle_winning_moves(state, ForWhom.OPPONENT))),
        ]

    def scripted_action(self, state, seat, truths, rng):
        legal = grid_legal_moves(state)
        for truth in truths:
            if truth.value:
                return min(truth.value)
        return self._fallback_choice(state, legal)

    def _fallback_choice(self, state: GridState, legal):
        return legal[0]


class TicTacToe(_GridGame):
    game_id = "tictactoe"
    title = "TicTacToe"
    rows = cols = win_length = 3
    avg_turns = 7
    subproblems = (
        Subproblem(1, "winning moves for you", "coords", "f1"),
        Subproblem(2, "winning moves for opponent", "coords", "f1"),
    )

    def _fallback_choice(self, state, legal):
        # smallest legal square among those with the best minimax value
        return max(legal, key=lambda m: (-minimax_value(grid_apply(state, m)), -legal.index(m)))


class Connect4(_GridGame):
    game_id = "connect4"
    title = "Connect4"
    rows, cols, win_length = 6, 7, 4
    gravity = True
    avg_turns = 19
    subproblems = (
        Subproblem(1, "winning moves for you", "coords", "f1"),
        Subproblem(2, "winning moves for opponent", "coords", "f1"),
    )

    def _fallback_choice(self, state, legal):
        def rank(move):
            after = grid_apply(state, move)
            # avoid handing the opponent a square directly above
            gift = bool(grid_oracle_winning_moves(after, ForWhom.MOVER))
            return (gift, abs(move[1] - 3), move[1])

        return min(legal, key=rank)

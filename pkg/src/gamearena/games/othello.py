"""Othello rules plus the corner and wedge oracles.

Squares are ``(col, row)`` zero-based pairs; ``(0, 0)`` renders as ``(A,1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import Game, IllegalMove, Outcome, Seat, Subproblem, SubproblemTruth

EMPTY, BLACK, WHITE = "O", "B", "W"
COLS = "ABCDEFGH"
DIRS = tuple((dc, dr) for dc in (-1, 0, 1) for dr in (-1, 0, 1) if dc or dr)
CORNERS = frozenset({(0, 0), (0, 7), (7, 0), (7, 7)})


@dataclass(frozen=True)
class OthelloState:
    board: tuple[tuple[str, ...], ...]  # board[row][col]
    to_move: str
    consecutive_passes: int = 0

    def at(self, col: int, row: int) -> str:
        return self.board[row][col]

    def count(self, color: str) -> int:
        return sum(row.count(color) for row in self.board)


def opponent(color: str) -> str:
    return WHITE if color == BLACK else BLACK


def initial_state() -> OthelloState:
    board = [[EMPTY] * 8 for _ in range(8)]
    board[3][3] = BLACK  # (D,4)
    board[4][4] = BLACK  # (E,5)
    board[4][3] = WHITE  # (D,5)
    board[3][4] = WHITE  # (E,4)
    return OthelloState(tuple(map(tuple, board)), BLACK)


def square_name(sq: tuple[int, int]) -> str:
    return f"({COLS[sq[0]]},{sq[1] + 1})"


def parse_square(text: str) -> tuple[int, int]:
    text = text.strip().strip("()").replace(" ", "")
    col, row = text.split(",")
    return COLS.index(col.upper()), int(row) - 1


def _flips(state: OthelloState, col: int, row: int, color: str) -> list[tuple[int, int]]:
    if state.board[row][col] != EMPTY:
        return []
    other = opponent(color)
    flipped = []
    for dc, dr in DIRS:
        line = []
        c, r = col + dc, row + dr
        while 0 <= c < 8 and 0 <= r < 8 and state.board[r][c] == other:
            line.append((c, r))
            c += dc
            r += dr
        if line and 0 <= c < 8 and 0 <= r < 8 and state.board[r][c] == color:
            flipped.extend(line)
    return flipped


def moves_for(state: OthelloState, color: str) -> list[tuple[int, int]]:
    return [(c, r) for r in range(8) for c in range(8) if _flips(state, c, r, color)]


def othello_legal_moves(state: OthelloState) -> list[tuple[int, int]]:
    """Squares where the side to move outflanks at least one disc; empty = pass."""
    return moves_for(state, state.to_move)


def othello_apply(state: OthelloState, move: tuple[int, int]) -> OthelloState:
    col, row = move
    flipped = _flips(state, col, row, state.to_move)
    if not flipped:
        raise IllegalMove(f"{square_name(move)} outflanks nothing")
    board = [list(r) for r in state.board]
    board[row][col] = state.to_move
    for c, r in flipped:
        board[r][c] = state.to_move
    after = OthelloState(tuple(map(tuple, board)), opponent(state.to_move))
    if moves_for(after, after.to_move):
        return after
    # opponent has no move: their turn is forfeited
    if moves_for(after, state.to_move):
        return OthelloState(after.board, state.to_move, 1)
    return OthelloState(after.board, after.to_move, 2)


def othello_outcome(state: OthelloState) -> Outcome:
    full = all(cell != EMPTY for row in state.board for cell in row)
    if not full and (moves_for(state, BLACK) or moves_for(state, WHITE)):
        return Outcome.ONGOING
    black, white = state.count(BLACK), state.count(WHITE)
    if black > white:
        return Outcome.FIRST_WINS
    if white > black:
        return Outcome.SECOND_WINS
    return Outcome.DRAW


def othello_oracle_corner(state: OthelloState) -> bool:
    return any(m in CORNERS for m in othello_legal_moves(state))


def edge_lines() -> list[list[tuple[int, int]]]:
    """The four edges as ordered square lists."""
    return [
        [(c, 0) for c in range(8)],
        [(c, 7) for c in range(8)],
        [(0, r) for r in range(8)],
        [(7, r) for r in range(8)],
    ]


def othello_oracle_wedges(state: OthelloState) -> set[tuple[int, int]]:
    """Legal edge squares inside an odd (1, 3, 5) empty run flanked by opponent discs."""
    legal = set(othello_legal_moves(state))
    other = opponent(state.to_move)
    found = set()
    for line in edge_lines():
        i = 0
        while i < 8:
            if state.at(*line[i]) != EMPTY:
                i += 1
                continue
            j = i
            while j < 8 and state.at(*line[j]) == EMPTY:
                j += 1
            length = j - i
            bounded = i > 0 and j < 8 and state.at(*line[i - 1]) == other and state.at(*line[j]) == other
            if bounded and length in (1, 3, 5):
                found.update(sq for sq in line[i:j] if sq in legal)
            i = j
    return found


def render_board(state: OthelloState) -> str:
    return "\n".join(
        " ".join(f"({COLS[c]},{r + 1}):{state.board[r][c]}" for c in range(8)) for r in range(8)
    )


class Othello(Game):
    game_id = "othello"
    title = "Othello"
    avg_turns = 63
    subproblems = (
        Subproblem(1, "corner move available", "bool", "f1", positive=True),
        Subproblem(2, "wedge squares", "othello_squares", "f1"),
    )

    def initial_state(self, seed: int) -> OthelloState:
        return initial_state()

    def to_move(self, state: OthelloState) -> tuple[Seat, ...]:
        return (Seat.FIRST if state.to_move == BLACK else Seat.SECOND,)

    def legal_actions(self, state, seat):
        return othello_legal_moves(state)

    def apply(self, state, actions):
        (move,) = actions.values()
        return othello_apply(state, move)

    def outcome(self, state):
        return othello_outcome(state)

    def render(self, state: OthelloState, seat: Seat) -> str:
        color = "Black (B)" if seat is Seat.FIRST else "White (W)"
        legal = ", ".join(square_name(m) for m in othello_legal_moves(state))
        return f"You are playing {color}.\nCurrent Game Board:\n{render_board(state)}\nLegal moves: [{legal}]"

    def action_text(self, action) -> str:
        return square_name(action)

    def truths(self, state, seat):
        return [
            SubproblemTruth(1, othello_oracle_corner(state)),
            SubproblemTruth(2, frozenset(othello_oracle_wedges(state))),
        ]

    def scripted_action(self, state, seat, truths, rng):
        legal = othello_legal_moves(state)
        corners = [m for m in legal if m in CORNERS]
        if corners:
            return corners[0]
        wedges = sorted(truths[1].value)
        if wedges:
            return wedges[0]
        return max(legal, key=lambda m: (len(_flips(state, m[0], m[1], state.to_move)), -legal.index(m)))

"""Checkers (American draughts) with forced captures, multi-jumps and kings.

Squares are zero-based ``(row, col)``. Black moves first, starts on rows
5-7 and advances toward row 0; White starts on rows 0-2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .base import Game, IllegalMove, Outcome, Seat, Subproblem, SubproblemTruth

EMPTY = "_"
BLACK, WHITE = "b", "w"
DRAW_MOVES = 40  # 20 per player without a capture
REPEAT_LIMIT = 3

Square = tuple[int, int]


@dataclass(frozen=True, order=True)
class CheckersMove:
    path: tuple[Square, ...]
    captured: tuple[Square, ...] = ()

    @property
    def is_capture(self) -> bool:
        return bool(self.captured)

    @property
    def start(self) -> Square:
        return self.path[0]

    @property
    def end(self) -> Square:
        return self.path[-1]

    def __str__(self) -> str:
        return "->".join(f"({r},{c})" for r, c in self.path)


@dataclass(frozen=True)
class CheckersState:
    board: tuple[tuple[str, ...], ...]
    to_move: str  # "b" or "w"
    halfmove_no_capture: int = 0
    # position keys since the last irreversible move (capture or promotion),
    # including the current one
    position_history: tuple = ()

    def at(self, sq: Square) -> str:
        return self.board[sq[0]][sq[1]]

    @property
    def key(self) -> tuple:
        return (self.board, self.to_move)

    def pieces(self, color: str) -> list[Square]:
        return [(r, c) for r in range(8) for c in range(8) if self.board[r][c].lower() == color]


def other(color: str) -> str:
    return WHITE if color == BLACK else BLACK


def is_dark(r: int, c: int) -> bool:
    return (r + c) % 2 == 1


def make_state(pieces: dict[Square, str], to_move: str, halfmove: int = 0) -> CheckersState:
    board = [[EMPTY] * 8 for _ in range(8)]
    for (r, c), p in pieces.items():
        board[r][c] = p
    board_t = tuple(map(tuple, board))
    return CheckersState(board_t, to_move, halfmove, ((board_t, to_move),))


def initial_state() -> CheckersState:
    pieces = {}
    for r in range(8):
        for c in range(8):
            if is_dark(r, c):
                if r <= 2:
                    pieces[(r, c)] = WHITE
                elif r >= 5:
                    pieces[(r, c)] = BLACK
    return make_state(pieces, BLACK)


def _forward(color: str) -> int:
    return -1 if color == BLACK else 1


def _promotion_row(color: str) -> int:
    return 0 if color == BLACK else 7


def _directions(piece: str) -> list[tuple[int, int]]:
    if piece.isupper():
        return [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    f = _forward(piece)
    return [(f, -1), (f, 1)]


def _on_board(r: int, c: int) -> bool:
    return 0 <= r < 8 and 0 <= c < 8


def _jump_chains(state: CheckersState, start: Square, piece: str, at: Square, path, captured) -> list[CheckersMove]:
    color = piece.lower()
    chains = []
    r, c = at
    for dr, dc in _directions(piece):
        mid = (r + dr, c + dc)
        land = (r + 2 * dr, c + 2 * dc)
        if not _on_board(*land):
            continue
        if state.at(mid).lower() != other(color) or mid in captured:
            continue
        if state.at(land) != EMPTY and land != start:
            continue
        new_path = path + (land,)
        new_captured = captured + (mid,)
        if piece.islower() and land[0] == _promotion_row(color):
            # crowning ends the turn
            chains.append(CheckersMove(new_path, new_captured))
            continue
        further = _jump_chains(state, start, piece, land, new_path, new_captured)
        chains.extend(further or [CheckersMove(new_path, new_captured)])
    return chains


def checkers_legal_moves(state: CheckersState) -> list[CheckersMove]:
    """All legal moves for the side to move; captures are compulsory."""
    captures, simple = [], []
    for sq in state.pieces(state.to_move):
        piece = state.at(sq)
        captures.extend(_jump_chains(state, sq, piece, sq, (sq,), ()))
        if not captures:
            for dr, dc in _directions(piece):
                dest = (sq[0] + dr, sq[1] + dc)
                if _on_board(*dest) and state.at(dest) == EMPTY:
                    simple.append(CheckersMove((sq, dest)))
    return sorted(captures) if captures else sorted(simple)


def promotes(state: CheckersState, move: CheckersMove) -> bool:
    piece = state.at(move.start)
    return piece.islower() and move.end[0] == _promotion_row(piece)


def checkers_apply(state: CheckersState, move: CheckersMove) -> CheckersState:
    if move not in checkers_legal_moves(state):
        raise IllegalMove(f"{move} is not legal")
    board = [list(row) for row in state.board]
    piece = board[move.start[0]][move.start[1]]
    board[move.start[0]][move.start[1]] = EMPTY
    for r, c in move.captured:
        board[r][c] = EMPTY
    crowned = promotes(state, move)
    board[move.end[0]][move.end[1]] = piece.upper() if crowned else piece
    board_t = tuple(map(tuple, board))
    to_move = other(state.to_move)
    halfmove = 0 if move.is_capture else state.halfmove_no_capture + 1
    key = (board_t, to_move)
    if move.is_capture or crowned:
        history = (key,)
    else:
        history = state.position_history + (key,)
    return CheckersState(board_t, to_move, halfmove, history)


def checkers_outcome(state: CheckersState) -> Outcome:
    if not checkers_legal_moves(state):
        return Outcome.SECOND_WINS if state.to_move == BLACK else Outcome.FIRST_WINS
    if Counter(state.position_history)[state.key] >= REPEAT_LIMIT:
        return Outcome.DRAW
    if state.halfmove_no_capture >= DRAW_MOVES:
        return Outcome.DRAW
    return Outcome.ONGOING


def checkers_oracle_new_king(state: CheckersState) -> set[CheckersMove]:
    return {m for m in checkers_legal_moves(state) if promotes(state, m)}


def checkers_oracle_worthless_die(state: CheckersState) -> set[CheckersMove]:
    """Moves whose piece can be captured next ply with no recapture of the capturer."""
    bad = set()
    for move in checkers_legal_moves(state):
        after = checkers_apply(state, move)
        for reply in checkers_legal_moves(after):
            if move.end not in reply.captured:
                continue
            after_reply = checkers_apply(after, reply)
            capturer = reply.end
            if not any(capturer in m.captured for m in checkers_legal_moves(after_reply)):
                bad.add(move)
                break
    return bad


def checkers_oracle_two_for_one(state: CheckersState) -> set[CheckersMove]:
    """One-piece sacrifices forcing a capture that opens a jump of two or more."""
    shots = set()
    for move in checkers_legal_moves(state):
        after = checkers_apply(state, move)
        replies = checkers_legal_moves(after)
        if not replies or any(r.captured != (move.end,) for r in replies):
            continue
        for reply in replies:
            after_reply = checkers_apply(after, reply)
            if any(len(m.captured) >= 2 for m in checkers_legal_moves(after_reply)):
                shots.add(move)
                break
    return shots


def render_board(state: CheckersState) -> str:
    return "\n".join(" ".join(f"({r},{c}):{state.board[r][c]}" for c in range(8)) for r in range(8))


def parse_path(text: str) -> tuple[Square, ...]:
    parts = [p for p in text.replace(" ", "").split("->") if p]
    out = []
    for part in parts:
        r, c = part.strip("()").split(",")
        out.append((int(r), int(c)))
    return tuple(out)


def match_path(legal: list[CheckersMove], path) -> CheckersMove | None:
    """Resolve a full path, or a start/end pair naming a unique chain."""
    for m in legal:
        if m.path == tuple(path):
            return m
    if len(path) == 2:
        hits = [m for m in legal if m.start == path[0] and m.end == path[1]]
        if len(hits) == 1:
            return hits[0]
    return None


class Checkers(Game):
    game_id = "checkers"
    title = "Checkers"
    avg_turns = 76
    subproblems = (
        Subproblem(1, "moves making a new king", "paths", "f1"),
        Subproblem(2, "worthless-die moves", "paths", "f1"),
        Subproblem(3, "two-for-one shots", "paths", "f1", scored=False),
    )

    def initial_state(self, seed: int) -> CheckersState:
        return initial_state()

    def to_move(self, state):
        return (Seat.FIRST if state.to_move == BLACK else Seat.SECOND,)

    def legal_actions(self, state, seat):
        return checkers_legal_moves(state)

    def apply(self, state, actions):
        (move,) = actions.values()
        return checkers_apply(state, move)

    def outcome(self, state):
        return checkers_outcome(state)

    def draw_is_rule(self, state) -> bool:
        return checkers_outcome(state) is Outcome.DRAW

    def render(self, state, seat):
        color = "Black (b/B)" if seat is Seat.FIRST else "White (w/W)"
        legal = ", ".join(str(m) for m in checkers_legal_moves(state))
        return f"You are playing {color}.\nCurrent Game Board:\n{render_board(state)}\nLegal moves: [{legal}]"

    def action_text(self, action: CheckersMove) -> str:
        return str(action)

    def resolve(self, state, seat, parsed):
        if parsed is None:
            return None
        return match_path(checkers_legal_moves(state), parsed)

    def truths(self, state, seat):
        as_paths = lambda moves: frozenset(m.path for m in moves)  # noqa: E731
        return [
            SubproblemTruth(1, as_paths(checkers_oracle_new_king(state))),
            SubproblemTruth(2, as_paths(checkers_oracle_worthless_die(state))),
            SubproblemTruth(3, as_paths(checkers_oracle_two_for_one(state))),
        ]

    def normalize_intermediate(self, state, seat, index, payload):
        if not isinstance(payload, frozenset):
            return payload
        legal = checkers_legal_moves(state)
        out = set()
        for path in payload:
            hit = match_path(legal, path)
            out.add(hit.path if hit else tuple(path))
        return frozenset(out)

    def scripted_action(self, state, seat, truths, rng):
        legal = checkers_legal_moves(state)
        kings, bad, shots = (t.value for t in truths)
        for m in legal:
            if m.path in kings:
                return m
        for m in legal:
            if m.path in shots:
                return m
        safe = [m for m in legal if m.path not in bad]
        return (safe or legal)[0]

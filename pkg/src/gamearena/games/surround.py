"""Simultaneous-move Surround on a walled 20x40 grid."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .base import Game, Outcome, Seat, Subproblem, SubproblemTruth

ROWS, COLS = 20, 40
SAFE_REGION = 10
EMPTY, WALL, MY_LAST, MY_HEAD, OPP_LAST, OPP_HEAD = range(6)
MOVES = {"Up": (-1, 0), "Down": (1, 0), "Left": (0, -1), "Right": (0, 1)}
ORDER = ("Up", "Down", "Left", "Right")

Square = tuple[int, int]


@dataclass(frozen=True)
class SurroundState:
    trails: tuple[tuple[Square, ...], tuple[Square, ...]]  # per seat, head last
    tick: int = 0
    crashed: tuple[bool, bool] = (False, False)

    def head(self, seat: Seat) -> Square:
        return self.trails[seat][-1]

    def occupied(self) -> set[Square]:
        return set(self.trails[0]) | set(self.trails[1])


def is_border(sq: Square) -> bool:
    r, c = sq
    return r <= 0 or r >= ROWS - 1 or c <= 0 or c >= COLS - 1


def initial_state() -> SurroundState:
    return SurroundState((((10, 9), (10, 10)), ((10, 30), (10, 29))))


def surround_step(state: SurroundState, action_a: str, action_b: str) -> SurroundState:
    """Move both heads at once and resolve crashes."""
    heads = []
    for seat, action in ((Seat.FIRST, action_a), (Seat.SECOND, action_b)):
        r, c = state.head(seat)
        dr, dc = MOVES[action]
        heads.append((r + dr, c + dc))
    blocked = state.occupied()
    crashed = [is_border(h) or h in blocked for h in heads]
    if heads[0] == heads[1]:
        crashed = [True, True]
    trails = tuple(state.trails[s] + (heads[s],) for s in (0, 1))
    return SurroundState(trails, state.tick + 1, tuple(crashed))


def surround_outcome(state: SurroundState) -> Outcome:
    a, b = state.crashed
    if a and b:
        return Outcome.DRAW
    if a:
        return Outcome.SECOND_WINS
    if b:
        return Outcome.FIRST_WINS
    return Outcome.ONGOING


def view_grid(state: SurroundState, seat: Seat) -> list[list[int]]:
    """Grid values as seen by ``seat``."""
    grid = [[WALL if is_border((r, c)) else EMPTY for c in range(COLS)] for r in range(ROWS)]
    for trail in state.trails:
        for r, c in trail:
            if 0 <= r < ROWS and 0 <= c < COLS:
                grid[r][c] = WALL
    for who, last_val, head_val in ((seat, MY_LAST, MY_HEAD), (seat.other, OPP_LAST, OPP_HEAD)):
        trail = state.trails[who]
        if len(trail) >= 2:
            r, c = trail[-2]
            grid[r][c] = last_val
        r, c = trail[-1]
        if 0 <= r < ROWS and 0 <= c < COLS:
            grid[r][c] = head_val
    return grid


def surround_oracle_adjacent(grid, head: Square) -> dict[str, int]:
    out = {}
    for name in ORDER:
        dr, dc = MOVES[name]
        r, c = head[0] + dr, head[1] + dc
        out[name] = grid[r][c] if 0 <= r < len(grid) and 0 <= c < len(grid[0]) else -1
    return out


def surround_oracle_valid_actions(grid, head: Square) -> set[str]:
    return {name for name, v in surround_oracle_adjacent(grid, head).items() if v == EMPTY}


def region_size(grid, start: Square, limit: int | None = None) -> int:
    """Cells in the 4-connected empty region containing ``start`` (start included), capped at ``limit``."""
    seen = {start}
    queue = deque([start])
    while queue:
        if limit is not None and len(seen) >= limit:
            return limit
        r, c = queue.popleft()
        for dr, dc in MOVES.values():
            nr, nc = r + dr, c + dc
            if 0 <= nr < len(grid) and 0 <= nc < len(grid[0]) and (nr, nc) not in seen and grid[nr][nc] == EMPTY:
                seen.add((nr, nc))
                queue.append((nr, nc))
    return len(seen)


def surround_oracle_safety(grid, head: Square, threshold: int = SAFE_REGION) -> dict[str, str]:
    out = {}
    for name in ORDER:
        if name not in surround_oracle_valid_actions(grid, head):
            continue
        dr, dc = MOVES[name]
        landing = (head[0] + dr, head[1] + dc)
        out[name] = "Safe" if region_size(grid, landing, threshold) >= threshold else "Unsafe"
    return out


def render_grid(grid) -> str:
    return "\n".join(" ".join(f"({r},{c}):{v}" for c, v in enumerate(row)) for r, row in enumerate(grid))


class Surround(Game):
    game_id = "surround"
    title = "Surround"
    simultaneous = True
    avg_turns = 84
    subproblems = (
        Subproblem(1, "adjacent values", "adjacent", "acc"),
        Subproblem(2, "valid actions", "actions", "acc"),
        Subproblem(3, "path safety", "safety", "f1", positive="Safe"),
    )

    def initial_state(self, seed: int) -> SurroundState:
        return initial_state()

    def to_move(self, state):
        return (Seat.FIRST, Seat.SECOND)

    def legal_actions(self, state, seat):
        return list(ORDER)

    def apply(self, state, actions):
        return surround_step(state, actions[Seat.FIRST], actions[Seat.SECOND])

    def outcome(self, state):
        return surround_outcome(state)

    def render(self, state, seat):
        trace = ", ".join(f"({r},{c})" for r, c in state.trails[seat])
        return f"Your moving trace: [{trace}]\nCurrent game state:\n{render_grid(view_grid(state, seat))}"

    def action_text(self, action) -> str:
        return f"Move {action}"

    def answer_line(self, action_text: str) -> str:
        return action_text

    def truths(self, state, seat):
        grid = view_grid(state, seat)
        head = state.head(seat)
        adjacent = surround_oracle_adjacent(grid, head)
        safety = surround_oracle_safety(grid, head)
        return [
            SubproblemTruth(1, tuple((k, adjacent[k]) for k in ORDER)),
            SubproblemTruth(2, frozenset(surround_oracle_valid_actions(grid, head))),
            SubproblemTruth(3, tuple((k, safety[k]) for k in ORDER if k in safety)),
        ]

    def scripted_action(self, state, seat, truths, rng):
        grid = view_grid(state, seat)
        head = state.head(seat)
        valid = [k for k in ORDER if k in truths[1].value]
        if not valid:
            return ORDER[0]

        def room(name):
            dr, dc = MOVES[name]
            return region_size(grid, (head[0] + dr, head[1] + dc))

        return max(valid, key=lambda k: (room(k), -ORDER.index(k)))

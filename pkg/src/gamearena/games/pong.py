"""Two-paddle Pong on an integer lattice with a closed-form intercept oracle.

Coordinates follow the text observation: larger y is higher, the lower wall
is y=16 and the upper wall y=176. Seat First drives the right paddle
(x=140) and Seat Second the left one (x=20); each seat is shown the court
mirrored so that it always plays the right paddle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction

from .. import rng as rngmod
from .base import Game, Outcome, Seat, Subproblem, SubproblemTruth

LOWER, UPPER = 16, 176
SPAN = UPPER - LOWER
RIGHT_X, LEFT_X = 140, 20
MIRROR = RIGHT_X + LEFT_X
PADDLE_H = 16
PADDLE_SPEED = 4
MID_Y = 96
SERVE_X = 80
FRAMES_PER_TURN = 3
OBSERVED_FRAMES = 3
POINTS_TO_WIN = 5
STAY, UP, DOWN = 0, 1, 2
ACTION_NAMES = {STAY: "Stay Still", UP: "Move Up", DOWN: "Move Down"}


class Direction(str, enum.Enum):
    LEFT_DOWN = "Left Down"
    RIGHT_UP = "Right Up"
    LEFT_UP = "Left Up"
    RIGHT_DOWN = "Right Down"


class DegenerateTrajectory(ValueError):
    """The frames do not determine a direction or an intercept."""


@dataclass(frozen=True)
class Frame:
    """Raw snapshot: ball and the lower edge of each paddle."""

    ball_x: int
    ball_y: int
    right_lo: int
    left_lo: int

    def view(self, seat: Seat) -> dict:
        """Observation dict in the key order agents are shown."""
        if seat is Seat.FIRST:
            bx, mine, theirs = self.ball_x, self.right_lo, self.left_lo
        else:
            bx, mine, theirs = MIRROR - self.ball_x, self.left_lo, self.right_lo
        return {
            "ball_x": bx,
            "ball_y": self.ball_y,
            "player_x": RIGHT_X,
            "player_y": [mine, mine + PADDLE_H],
            "opponent_x": LEFT_X,
            "opponent_y": [theirs, theirs + PADDLE_H],
            "upper_bound": UPPER,
            "lower_bound": LOWER,
        }


@dataclass(frozen=True)
class PongState:
    ball: tuple[int, int]
    velocity: tuple[int, int]
    right_lo: int
    left_lo: int
    score: tuple[int, int]  # (right / First, left / Second)
    frame_index: int
    seed: int
    serve_count: int = 0
    history: tuple[Frame, ...] = ()

    def snapshot(self) -> Frame:
        return Frame(self.ball[0], self.ball[1], self.right_lo, self.left_lo)


def serve_velocity(seed: int, serve_count: int) -> tuple[int, int]:
    stream = rngmod.derive_rng(seed, [rngmod.SERVE, serve_count])
    dx = stream.choice((2, 4)) * stream.choice((1, -1))
    dy = stream.choice((2, 4, 8)) * stream.choice((1, -1))
    return dx, dy


def new_game(seed: int) -> PongState:
    lo = MID_Y - PADDLE_H // 2
    state = PongState((SERVE_X, MID_Y), serve_velocity(seed, 0), lo, lo, (0, 0), 0, seed, 1)
    return replace(state, history=(state.snapshot(),))


def _move_paddle(lo: int, action: int) -> int:
    if action == UP:
        lo += PADDLE_SPEED
    elif action == DOWN:
        lo -= PADDLE_SPEED
    return max(LOWER, min(UPPER - PADDLE_H, lo))


def reflect_y(y: int, dy: int) -> tuple[int, int]:
    if y > UPPER:
        return 2 * UPPER - y, -dy
    if y < LOWER:
        return 2 * LOWER - y, -dy
    return y, dy


def pong_step(state: PongState, action_right: int, action_left: int) -> PongState:
    """Advance one physics frame."""
    right_lo = _move_paddle(state.right_lo, action_right)
    left_lo = _move_paddle(state.left_lo, action_left)
    (x, y), (dx, dy) = state.ball, state.velocity
    x += dx
    y, dy = reflect_y(y + dy, dy)
    score = state.score
    serve_count = state.serve_count
    scored = False
    if dx > 0 and x >= RIGHT_X:
        if right_lo <= y <= right_lo + PADDLE_H:
            dx = -dx
        else:
            score, scored = (score[0], score[1] + 1), True
    elif dx < 0 and x <= LEFT_X:
        if left_lo <= y <= left_lo + PADDLE_H:
            dx = -dx
        else:
            score, scored = (score[0] + 1, score[1]), True
    if scored:
        (x, y), (dx, dy) = (SERVE_X, MID_Y), serve_velocity(state.seed, serve_count)
        serve_count += 1
    nxt = PongState((x, y), (dx, dy), right_lo, left_lo, score, state.frame_index + 1, state.seed, serve_count)
    history = (nxt.snapshot(),) if scored else (state.history + (nxt.snapshot(),))[-OBSERVED_FRAMES:]
    return replace(nxt, history=history)


def pong_observe(state: PongState, seat: Seat = Seat.FIRST, k_frames: int = OBSERVED_FRAMES) -> list[dict]:
    """Last ``k_frames`` snapshots seen from ``seat``, padded with the oldest."""
    if k_frames < 2:
        raise ValueError("need at least two frames")
    frames = list(state.history[-k_frames:])
    while len(frames) < k_frames:
        frames.insert(0, frames[0])
    return [f.view(seat) for f in frames]


def render_frames(frames: list[dict]) -> str:
    return "\n".join(f"Frame {i}\n{frame!r}" for i, frame in enumerate(frames, start=1))


def _last_delta(frames) -> tuple[int, int, int, int]:
    if len(frames) < 2:
        raise DegenerateTrajectory("need two frames")
    a, b = frames[-2], frames[-1]
    return b["ball_x"], b["ball_y"], b["ball_x"] - a["ball_x"], b["ball_y"] - a["ball_y"]


def pong_oracle_direction(frames) -> Direction:
    _, _, dx, dy = _last_delta(frames)
    if dx == 0 or dy == 0:
        raise DegenerateTrajectory("ball direction undefined")
    if dx > 0:
        return Direction.RIGHT_UP if dy > 0 else Direction.RIGHT_DOWN
    return Direction.LEFT_UP if dy > 0 else Direction.LEFT_DOWN


def fold_into_court(raw) -> Fraction:
    """Reflect an unbounded height back between the walls (2*SPAN periodic)."""
    t = (Fraction(raw) - LOWER) % (2 * SPAN)
    return LOWER + (t if t <= SPAN else 2 * SPAN - t)


def pong_oracle_intercept_y(frames) -> int:
    """Ball height when it reaches the right paddle plane; mid-court if moving left."""
    x, y, dx, dy = _last_delta(frames)
    if dx == 0:
        raise DegenerateTrajectory("no horizontal motion")
    if dx < 0:
        return MID_Y
    raw = y + Fraction(dy * (RIGHT_X - x), dx)
    folded = fold_into_court(raw)
    return int(folded + Fraction(1, 2)) if folded.denominator != 1 else int(folded)


def simulate_intercept(x: int, y: int, dx: int, dy: int) -> int:
    """Step the ball frame by frame until it reaches the right paddle plane."""
    if dx <= 0:
        return MID_Y
    while x < RIGHT_X:
        x += dx
        y, dy = reflect_y(y + dy, dy)
    return y


class Pong(Game):
    game_id = "pong"
    title = "Pong"
    simultaneous = True
    avg_turns = 144
    subproblems = (
        Subproblem(1, "ball direction", "direction", "acc"),
        Subproblem(2, "intercept height", "int", "acc"),
    )

    def initial_state(self, seed: int) -> PongState:
        return new_game(seed)

    def to_move(self, state):
        return (Seat.FIRST, Seat.SECOND)

    def legal_actions(self, state, seat):
        return [STAY, UP, DOWN]

    def apply(self, state, actions):
        right, left = actions[Seat.FIRST], actions[Seat.SECOND]
        for _ in range(FRAMES_PER_TURN):
            state = pong_step(state, right, left)
            if max(state.score) >= POINTS_TO_WIN:
                break
        return state

    def outcome(self, state):
        right, left = state.score
        if right >= POINTS_TO_WIN:
            return Outcome.FIRST_WINS
        if left >= POINTS_TO_WIN:
            return Outcome.SECOND_WINS
        return Outcome.ONGOING

    def render(self, state, seat):
        mine, theirs = state.score if seat is Seat.FIRST else state.score[::-1]
        return f"Score - You: {mine}, Opponent: {theirs}\n" + render_frames(pong_observe(state, seat))

    def action_text(self, action) -> str:
        return f"{action} - {ACTION_NAMES[action]}"

    def answer_line(self, action_text: str) -> str:
        return action_text

    def truths(self, state, seat):
        frames = pong_observe(state, seat)
        vx, vy = state.velocity
        if seat is Seat.SECOND:
            vx = -vx
        _, _, dx, dy = _last_delta(frames)
        # frames straddling a bounce or a serve do not determine the trajectory
        if (dx, dy) != (vx, vy):
            return [SubproblemTruth(1, None), SubproblemTruth(2, None)]
        return [
            SubproblemTruth(1, pong_oracle_direction(frames).value),
            SubproblemTruth(2, pong_oracle_intercept_y(frames)),
        ]

    def scripted_action(self, state, seat, truths, rng):
        frames = pong_observe(state, seat)
        target = truths[1].value
        if target is None:
            target = MID_Y
        lo = frames[-1]["player_y"][0]
        centre = lo + PADDLE_H // 2
        if target > centre + 2:
            return UP
        if target < centre - 2:
            return DOWN
        return STAY

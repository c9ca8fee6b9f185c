"""The contract every game module implements for the match engine."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Any, Hashable, Sequence


class Seat(enum.IntEnum):
    FIRST = 0
    SECOND = 1

    @property
    def other(self) -> "Seat":
        return Seat(1 - self)


class Outcome(str, enum.Enum):
    FIRST_WINS = "FirstWins"
    SECOND_WINS = "SecondWins"
    DRAW = "Draw"
    ONGOING = "Ongoing"


class IllegalMove(ValueError):
    """Raised when an action is not legal in the given state."""


@dataclass(frozen=True)
class Subproblem:
    """Declaration of one intermediate question a game asks each turn.

    ``kind`` names the payload grammar in :mod:`gamearena.protocol.payloads`;
    ``metric`` is ``"acc"`` or ``"f1"``; ``positive`` is the positive class
    for boolean/label F1. Unscored subproblems are computed and logged but
    left out of the intermediate-step metric.
    """

    index: int
    name: str
    kind: str
    metric: str
    positive: Any = None
    scored: bool = True


@dataclass(frozen=True)
class SubproblemTruth:
    """Oracle answer for one subproblem at one turn; ``value`` None = undefined."""

    index: int
    value: Any

    @property
    def defined(self) -> bool:
        return self.value is not None


class Game:
    """Base class for the eight games.

    States are immutable values. ``apply`` takes a mapping seat -> action
    holding exactly the seats returned by ``to_move``.
    """

    game_id: str = ""
    title: str = ""
    simultaneous: bool = False
    zero_sum: bool = True
    reward_cap: int = 1
    avg_turns: int = 1
    subproblems: tuple[Subproblem, ...] = ()

    @property
    def max_turns(self) -> int:
        return 4 * self.avg_turns

    # -- rules ---------------------------------------------------------
    def initial_state(self, seed: int) -> Any:
        raise NotImplementedError

    def to_move(self, state) -> tuple[Seat, ...]:
        raise NotImplementedError

    def legal_actions(self, state, seat: Seat) -> list:
        raise NotImplementedError

    def apply(self, state, actions: dict[Seat, Any]) -> Any:
        raise NotImplementedError

    def outcome(self, state) -> Outcome:
        raise NotImplementedError

    def rewards(self, state) -> tuple[float, float]:
        """Rewards of (First, Second) at a terminal state."""
        result = self.outcome(state)
        if result is Outcome.FIRST_WINS:
            return 1, -1
        if result is Outcome.SECOND_WINS:
            return -1, 1
        return 0, 0

    def turn_limit_rewards(self, state) -> tuple[float, float]:
        return 0, 0

    def draw_is_rule(self, state) -> bool:
        """True when a terminal draw came from a draw rule rather than play."""
        return False

    # -- text ----------------------------------------------------------
    def render(self, state, seat: Seat) -> str:
        raise NotImplementedError

    def action_text(self, action) -> str:
        """Canonical log form of an action, parseable by :meth:`resolve_text`."""
        raise NotImplementedError

    def resolve(self, state, seat: Seat, parsed) -> Any | None:
        """Map an extracted action value onto a legal action, or None."""
        legal = self.legal_actions(state, seat)
        return parsed if parsed in legal else None

    def resolve_text(self, state, seat: Seat, text: str):
        from ..protocol.extract import extract_action

        action = self.resolve(state, seat, extract_action(self.answer_line(text), self.game_id))
        if action is None:
            raise IllegalMove(f"{text!r} is not legal")
        return action

    def answer_line(self, action_text: str) -> str:
        """Wrap a canonical action as the final line an agent would write."""
        return f"Chosen Move: {action_text}"

    # -- oracles -------------------------------------------------------
    def truths(self, state, seat: Seat) -> list[SubproblemTruth]:
        raise NotImplementedError

    def truths_after_reply(self, state, seat: Seat, truths, parsed_action) -> list[SubproblemTruth]:
        """Hook for subproblems whose answer depends on the agent's own reply."""
        return truths

    def normalize_intermediate(self, state, seat: Seat, index: int, payload):
        return payload

    # -- reference policies ---------------------------------------------
    def random_action(self, state, seat: Seat, rng: random.Random):
        legal = self.legal_actions(state, seat)
        return legal[rng.randrange(len(legal))]

    def scripted_action(self, state, seat: Seat, truths: Sequence[SubproblemTruth], rng: random.Random):
        return self.legal_actions(state, seat)[0]


def sorted_unique(items) -> list[Hashable]:
    return sorted(set(items))

"""Heads-up no-limit Texas Hold'em played as a short multi-hand match.

Blinds are 1/2. The button posts the small blind, acts first preflop and
last after the flop; it alternates every hand, starting with seat First.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .. import rng as rngmod
from ..poker.cards import Card, evaluate_hand, shuffled_deck
from ..poker.preflop import load_table, preflop_oracle
from .base import Game, IllegalMove, Outcome, Seat, Subproblem, SubproblemTruth

START_STACK = 100
SMALL_BLIND, BIG_BLIND = 1, 2
HANDS_PER_MATCH = 8
STAGES = ("PreFlop", "Flop", "Turn", "River", "Showdown")
BOARD_SIZE = {"PreFlop": 0, "Flop": 3, "Turn": 4, "River": 5, "Showdown": 5}


class Action(str, enum.Enum):
    FOLD = "Fold"
    CHECK_CALL = "Check and Call"
    RAISE_HALF = "Raise Half Pot"
    RAISE_FULL = "Raise Full Pot"
    ALL_IN = "All in"


ACTIONS = tuple(Action)


@dataclass(frozen=True)
class HoldemState:
    seed: int
    hand_no: int
    button: Seat
    stage: str
    hole: tuple[tuple[Card, Card], tuple[Card, Card]]
    runout: tuple[Card, ...]  # all five board cards, revealed by stage
    stacks: tuple[int, int]  # chips behind
    contrib: tuple[int, int]  # chips in this hand's pot
    to_act: Seat
    acted: tuple[bool, bool] = (False, False)
    finished: bool = False
    hands_per_match: int = HANDS_PER_MATCH
    coerced: bool = False  # last action was capped at the stack

    @property
    def board(self) -> tuple[Card, ...]:
        return self.runout[: BOARD_SIZE[self.stage]]

    @property
    def pot(self) -> int:
        return sum(self.contrib)

    def to_call(self, seat: Seat) -> int:
        return self.contrib[seat.other] - self.contrib[seat]


def deal_hand(seed: int, hand_no: int, button: Seat, stacks: tuple[int, int], hands: int) -> HoldemState:
    deck = shuffled_deck(rngmod.derive_rng(seed, [rngmod.DECK, hand_no]))
    hole = ((deck[0], deck[1]), (deck[2], deck[3]))
    s, c = list(stacks), [0, 0]
    for seat, blind in ((button, SMALL_BLIND), (button.other, BIG_BLIND)):
        posted = min(blind, s[seat])
        s[seat] -= posted
        c[seat] += posted
    state = HoldemState(seed, hand_no, button, "PreFlop", hole, tuple(deck[4:9]), tuple(s), tuple(c), button,
                        hands_per_match=hands)
    if 0 in state.stacks and state.contrib[0] != state.contrib[1]:
        # a short blind: settle whatever can be matched and run the board out
        return _settle_all_in(state)
    return state


def new_match(seed: int, hands: int = HANDS_PER_MATCH) -> HoldemState:
    return deal_hand(seed, 0, Seat.FIRST, (START_STACK, START_STACK), hands)


def _refund_excess(contrib: list[int], stacks: list[int]) -> None:
    hi = 0 if contrib[0] > contrib[1] else 1
    excess = contrib[hi] - contrib[1 - hi]
    contrib[hi] -= excess
    stacks[hi] += excess


def _settle_all_in(state: HoldemState) -> HoldemState:
    c, s = list(state.contrib), list(state.stacks)
    _refund_excess(c, s)
    return _showdown(replace(state, contrib=tuple(c), stacks=tuple(s), stage="Showdown"))


def _finish_hand(state: HoldemState, winnings: tuple[int, int]) -> HoldemState:
    stacks = (state.stacks[0] + winnings[0], state.stacks[1] + winnings[1])
    nxt = state.hand_no + 1
    if 0 in stacks or nxt >= state.hands_per_match:
        return replace(state, stacks=stacks, contrib=(0, 0), stage="Showdown", finished=True)
    return deal_hand(state.seed, nxt, state.button.other, stacks, state.hands_per_match)


def hand_strength(state: HoldemState, seat: Seat):
    return evaluate_hand(state.hole[seat] + state.runout)


def _showdown(state: HoldemState) -> HoldemState:
    first, second = hand_strength(state, Seat.FIRST), hand_strength(state, Seat.SECOND)
    pot = state.pot
    if first > second:
        won = (pot, 0)
    elif second > first:
        won = (0, pot)
    else:
        won = (pot // 2, pot - pot // 2)
    return _finish_hand(state, won)


def _next_street(state: HoldemState) -> HoldemState:
    if 0 in state.stacks or state.stage == "River":
        return _showdown(replace(state, stage="Showdown"))
    stage = STAGES[STAGES.index(state.stage) + 1]
    return replace(state, stage=stage, acted=(False, False), to_act=state.button.other)


def holdem_step(state: HoldemState, action: Action, seat: Seat | None = None) -> HoldemState:
    """Apply one betting action by the player to act."""
    if state.finished:
        raise IllegalMove("match is over")
    if seat is not None and seat is not state.to_act:
        raise IllegalMove(f"{seat.name} acted out of turn")
    me = state.to_act
    opp = me.other
    action = Action(action)
    c, s = list(state.contrib), list(state.stacks)
    if action is Action.FOLD:
        won = [0, 0]
        won[opp] = state.pot
        return _finish_hand(state, tuple(won))
    to_call = c[opp] - c[me]
    wanted = {
        Action.CHECK_CALL: to_call,
        Action.RAISE_HALF: to_call + state.pot // 2,
        Action.RAISE_FULL: to_call + state.pot,
        Action.ALL_IN: s[me],
    }[action]
    # never put in more than the opponent could match
    cap = min(s[me], s[opp] + c[opp] - c[me])
    put = min(wanted, cap) if wanted > to_call else min(to_call, s[me])
    coerced = wanted > s[me]
    c[me] += put
    s[me] -= put
    acted = [False, False]
    acted[me] = True
    if put <= to_call:
        acted[opp] = state.acted[opp]
    if c[me] < c[opp]:
        # called all-in for less
        _refund_excess(c, s)
    nxt = replace(state, contrib=tuple(c), stacks=tuple(s), acted=tuple(acted), to_act=opp, coerced=coerced)
    if c[0] == c[1] and (all(acted) or 0 in s):
        return _next_street(nxt)
    return nxt


def holdem_oracle_preflop(hole_cards, table=None) -> float:
    return preflop_oracle(hole_cards, table)


def holdem_oracle_rank(hole_cards, community) -> int:
    if len(community) not in (3, 4, 5):
        raise ValueError("community must hold 3 to 5 cards")
    return evaluate_hand(tuple(hole_cards) + tuple(community)).category


class Holdem(Game):
    game_id = "holdem"
    title = "Texas Hold'em"
    avg_turns = 9
    reward_cap = START_STACK
    subproblems = (
        Subproblem(1, "preflop win probability", "percent", "acc"),
        Subproblem(2, "hand ranking", "rank", "acc"),
    )

    @property
    def max_turns(self) -> int:
        # the 4x cap is applied per hand
        return 4 * self.avg_turns * HANDS_PER_MATCH

    def initial_state(self, seed: int) -> HoldemState:
        return new_match(seed)

    def to_move(self, state):
        return (state.to_act,)

    def legal_actions(self, state, seat):
        return list(ACTIONS)

    def apply(self, state, actions):
        ((seat, action),) = actions.items()
        return holdem_step(state, action, seat)

    def outcome(self, state):
        if not state.finished:
            return Outcome.ONGOING
        a, b = state.stacks
        if a > b:
            return Outcome.FIRST_WINS
        if b > a:
            return Outcome.SECOND_WINS
        return Outcome.DRAW

    def rewards(self, state):
        return tuple(s + c - START_STACK for s, c in zip(state.stacks, state.contrib))

    def turn_limit_rewards(self, state):
        # unfinished pot goes back to its owners
        return self.rewards(state)

    def render(self, state, seat):
        role = "small blind (button)" if seat is state.button else "big blind"
        board = ", ".join(str(c) for c in state.board) or "None"
        return "\n".join([
            f"Hand {state.hand_no + 1} of {state.hands_per_match}, stage: {state.stage}. You are the {role}.",
            f"Your private cards: {', '.join(str(c) for c in state.hole[seat])}",
            f"Community cards: {board}",
            f"Your chips in the pot: {state.contrib[seat]}",
            f"Your opponent's chips in the pot: {state.contrib[seat.other]}",
            f"Your remaining chips: {state.stacks[seat]}",
            f"Your opponent's remaining chips: {state.stacks[seat.other]}",
        ])

    def action_text(self, action) -> str:
        return Action(action).value

    def answer_line(self, action_text: str) -> str:
        return f"Chosen Action\n{action_text}"

    def resolve(self, state, seat, parsed):
        try:
            return Action(parsed)
        except ValueError:
            return None

    def truths(self, state, seat):
        hole = state.hole[seat]
        if state.stage == "PreFlop":
            return [SubproblemTruth(1, holdem_oracle_preflop(hole)), SubproblemTruth(2, None)]
        return [SubproblemTruth(1, None), SubproblemTruth(2, holdem_oracle_rank(hole, state.board))]

    def scripted_action(self, state, seat, truths, rng):
        win, rank = truths[0].value, truths[1].value
        if win is not None:
            return Action.RAISE_HALF if win > 57 else Action.CHECK_CALL
        if rank <= 8:
            return Action.RAISE_HALF
        top = max(c.rank for c in state.hole[seat])
        if rank == 10 and top < 9 and state.to_call(seat) > 0:
            return Action.FOLD
        return Action.CHECK_CALL

    def table_text(self) -> str:
        return ", ".join(f"{cls}:{pct}%" for cls, pct in load_table().items())

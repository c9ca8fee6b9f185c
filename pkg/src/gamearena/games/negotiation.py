"""Alternating-offer negotiation over three item kinds with private valuations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .. import rng as rngmod
from .base import Game, IllegalMove, Outcome, Seat, Subproblem, SubproblemTruth

TOTAL_VALUE = 30
SAFE_ROUNDS = 8
END_CHANCE = 0.2
AGREE = "Agree"
ACCEPT_THRESHOLD = 15

Allocation = tuple[int, int, int]
Proposal = tuple[Allocation, Allocation]  # (P1 share, P2 share)


@dataclass(frozen=True)
class NegotiationPool:
    counts: Allocation
    valuations: tuple[Allocation, Allocation]


@lru_cache(maxsize=None)
def valuation_solutions(counts: Allocation) -> tuple[Allocation, ...]:
    """Every non-negative integer valuation with sum(n_i * v_i) == 30."""
    n1, n2, n3 = counts
    out = []
    for v1 in range(TOTAL_VALUE // n1 + 1):
        for v2 in range((TOTAL_VALUE - n1 * v1) // n2 + 1):
            rest = TOTAL_VALUE - n1 * v1 - n2 * v2
            if rest % n3 == 0:
                out.append((v1, v2, rest // n3))
    return tuple(out)


def generate_pool(stream) -> NegotiationPool:
    while True:
        counts = tuple(stream.randint(1, 5) for _ in range(3))
        options = valuation_solutions(counts)
        if options:
            break
    return NegotiationPool(counts, (stream.choice(options), stream.choice(options)))


def is_valid(proposal, counts: Allocation) -> bool:
    try:
        first, second = proposal
        return all(a >= 0 and b >= 0 and a + b == n for a, b, n in zip(first, second, counts, strict=True))
    except (TypeError, ValueError):
        return False


def all_proposals(counts: Allocation) -> list[Proposal]:
    out = []
    for share in itertools.product(*(range(n + 1) for n in counts)):
        out.append((share, tuple(n - k for n, k in zip(counts, share))))
    return out


def negotiation_oracle_value(proposal: Proposal, viewer_valuations, viewer_seat: Seat) -> int:
    return sum(k * v for k, v in zip(proposal[viewer_seat], viewer_valuations))


def proposal_text(proposal: Proposal) -> str:
    (a, b, c), (d, e, f) = proposal
    return f"[P1: ({a},{b},{c}), P2: ({d},{e},{f})]"


@dataclass(frozen=True)
class NegotiationState:
    seed: int
    pool: NegotiationPool
    round: int = 1
    history: tuple = ()  # (seat, proposal or AGREE) per round
    standing: Proposal | None = None
    agreed: bool = False
    terminated: bool = False

    @property
    def to_move(self) -> Seat:
        return Seat.FIRST if self.round % 2 == 1 else Seat.SECOND


def termination_fires(seed: int, round_no: int) -> bool:
    """Coin flip taken before each round after the eighth."""
    return round_no > SAFE_ROUNDS and rngmod.derive_rng(seed, [rngmod.TERMINATION, round_no]).random() < END_CHANCE


def negotiation_step(state: NegotiationState, reply) -> NegotiationState:
    seat = state.to_move
    if reply == AGREE:
        if state.standing is None:
            raise IllegalMove("nothing to agree to")
        return NegotiationState(state.seed, state.pool, state.round, state.history + ((seat, AGREE),),
                                state.standing, agreed=True)
    if not is_valid(reply, state.pool.counts):
        raise IllegalMove(f"invalid proposal {reply!r}")
    reply = (tuple(reply[0]), tuple(reply[1]))
    nxt = state.round + 1
    return NegotiationState(state.seed, state.pool, nxt, state.history + ((seat, reply),), reply,
                            terminated=termination_fires(state.seed, nxt))


class Negotiation(Game):
    game_id = "negotiation"
    title = "Negotiation v2"
    zero_sum = False
    avg_turns = 8
    reward_cap = TOTAL_VALUE
    subproblems = (
        Subproblem(1, "value of opponent proposal", "int", "acc"),
        Subproblem(2, "value of own proposal", "int", "acc"),
    )

    def initial_state(self, seed: int) -> NegotiationState:
        return NegotiationState(seed, generate_pool(rngmod.derive_rng(seed, [rngmod.POOL])))

    def to_move(self, state):
        return (state.to_move,)

    def legal_actions(self, state, seat):
        proposals = all_proposals(state.pool.counts)
        return ([AGREE] if state.standing is not None else []) + proposals

    def apply(self, state, actions):
        ((_, reply),) = actions.items()
        return negotiation_step(state, reply)

    def outcome(self, state):
        if state.agreed or state.terminated:
            return Outcome.DRAW
        return Outcome.ONGOING

    def rewards(self, state):
        if not state.agreed:
            return 0, 0
        vals = state.pool.valuations
        return tuple(negotiation_oracle_value(state.standing, vals[s], s) for s in Seat)

    def render(self, state, seat):
        lines = [
            f"You are Player {seat + 1}.",
            f"Pool: [{','.join(map(str, state.pool.counts))}]",
            f"Your values of the items: [{','.join(map(str, state.pool.valuations[seat]))}]",
            f"Current round: {state.round}",
            "Negotiation history:",
        ]
        for i, (who, reply) in enumerate(state.history, start=1):
            said = "[Agree]" if reply == AGREE else proposal_text(reply)
            lines.append(f"Round {i} - Player {who + 1}: {said}")
        if not state.history:
            lines.append("None")
        return "\n".join(lines)

    def action_text(self, action) -> str:
        return "[Agree]" if action == AGREE else proposal_text(action)

    def answer_line(self, action_text: str) -> str:
        return f"Proposal: {action_text}"

    def resolve(self, state, seat, parsed):
        if parsed == AGREE:
            return AGREE if state.standing is not None else None
        return (tuple(parsed[0]), tuple(parsed[1])) if is_valid(parsed, state.pool.counts) else None

    def truths(self, state, seat):
        vals = state.pool.valuations[seat]
        standing = None if state.standing is None else negotiation_oracle_value(state.standing, vals, seat)
        return [SubproblemTruth(1, standing), SubproblemTruth(2, None)]

    def truths_after_reply(self, state, seat, truths, parsed_action):
        if parsed_action is None or parsed_action == AGREE or not is_valid(parsed_action, state.pool.counts):
            return truths
        own = negotiation_oracle_value(parsed_action, state.pool.valuations[seat], seat)
        return [truths[0], SubproblemTruth(2, own)]

    def random_action(self, state, seat, rng):
        if state.standing is not None and rng.random() < 0.25:
            return AGREE
        proposals = all_proposals(state.pool.counts)
        return proposals[rng.randrange(len(proposals))]

    def scripted_action(self, state, seat, truths, rng):
        if truths[0].value is not None and truths[0].value >= ACCEPT_THRESHOLD:
            return AGREE
        vals = state.pool.valuations[seat]

        def key(p):
            mine = negotiation_oracle_value(p, vals, seat)
            return (mine >= 20, sum(p[seat.other]), mine)

        return max(all_proposals(state.pool.counts), key=key)

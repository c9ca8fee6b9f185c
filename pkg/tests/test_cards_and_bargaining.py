"""Hand evaluation kernels, the preflop table, Hold'em betting and Negotiation."""

import itertools
import random

import pytest

import naive
from criteria import CENSUS

from gamearena.games import get_game
from gamearena.games.base import IllegalMove, Outcome, Seat
from gamearena.games.holdem import (
    HANDS_PER_MATCH,
    Action,
    holdem_oracle_rank,
    holdem_step,
    new_match,
)
from gamearena.games.negotiation import (
    AGREE,
    NegotiationPool,
    NegotiationState,
    all_proposals,
    generate_pool,
    is_valid,
    negotiation_oracle_value,
    negotiation_step,
    proposal_text,
    termination_fires,
    valuation_solutions,
)
from gamearena.poker import handeval
from gamearena.poker.cards import Card, evaluate_hand, score_category
from gamearena.poker.preflop import all_classes, hand_class, load_table, preflop_oracle, table_text
from gamearena.rng import derive_rng

C = Card.parse


def cards(text):
    return [C(t) for t in text.split()]


# -- evaluation ----------------------------------------------------------------
@pytest.mark.parametrize("hand, rank", [
    ("As Ks Qs Js Ts 2d 3c", 1),
    ("9h 8h 7h 6h 5h Ad Ac", 2),
    ("5d 4d 3d 2d Ad Kc Qh", 2),
    ("7s 7h 7d 7c 2s", 3),
    ("Qs Qh Qd 9c 9s 2h 3h", 4),
    ("2h 7h 9h Jh Kh As Ad", 5),
    ("5s 4h 3d 2c Ah Kh Kd", 6),
    ("8s 8h 8d Ac 2s", 7),
    ("8s 8h 4d 4c 2s Ad", 8),
    ("Ts Th 4d 5c 2s", 9),
    ("As Qh 9d 5c 3s 2h 7d", 10),
])
def test_hand_rankings(hand, rank):
    assert evaluate_hand(cards(hand)).category == rank
    assert naive.ranking_number([c.code for c in cards(hand)]) == rank


def test_four_of_a_kind_is_rank_three():
    board = cards("7d 7c 2s")
    assert holdem_oracle_rank(cards("7s 7h"), board) == 3


def test_wheel_loses_to_six_high_straight():
    wheel = evaluate_hand(cards("As 2h 3d 4c 5s"))
    six = evaluate_hand(cards("2h 3d 4c 5s 6h"))
    assert six > wheel


def test_kernels_agree_and_order_like_naive():
    rng = random.Random(1)
    for _ in range(3000):
        hand = rng.sample(range(52), rng.choice((5, 6, 7)))
        other = rng.sample([c for c in range(52) if c not in hand], len(hand))
        fast, slow = handeval.score_cards(hand), handeval.python_kernel.score_cards(hand)
        assert fast == slow
        mine, theirs = naive.best_key(hand), naive.best_key(other)
        verdict = (mine > theirs) - (mine < theirs)
        s_other = handeval.score_cards(other)
        assert verdict == (fast > s_other) - (fast < s_other)
        assert score_category(fast) == naive.ranking_number(hand)


def test_evaluate_rejects_bad_input():
    with pytest.raises(ValueError):
        evaluate_hand(cards("As Ks Qs Js"))
    with pytest.raises(ValueError):
        evaluate_hand(cards("As As Qs Js Ts"))


def test_compiled_census():
    assert handeval.ranking_census() == CENSUS


@pytest.mark.slow
def test_python_census():
    assert list(reversed(handeval.python_kernel.category_census())) == CENSUS


def test_backend_reported():
    assert handeval.BACKEND in ("compiled", "python")


def test_card_text_round_trip():
    for code in range(52):
        card = Card.from_code(code)
        assert Card.parse(str(card)) == card
        assert Card.parse(card.short) == card


# -- preflop table -----------------------------------------------------------------
def test_table_shape_and_pins():
    table = load_table()
    assert len(table) == 169 and set(table) == set(all_classes())
    assert table["AA"] == 84.9 and table["43s"] == 35.7
    assert table["AA"] == max(table.values())
    assert table["32o"] == min(table.values())  # ties count as not winning, which hurts 32o most


def test_hand_class_naming():
    assert hand_class(C("Ah"), C("Kh")) == "AKs"
    assert hand_class(C("3d"), C("4d")) == "43s"
    assert hand_class(C("Td"), C("9s")) == "T9o"
    assert preflop_oracle((C("Ad"), C("As"))) == 84.9


def test_every_two_card_hand_has_an_entry():
    table = load_table()
    for a, b in itertools.combinations(range(52), 2):
        assert preflop_oracle((Card.from_code(a), Card.from_code(b))) == table[naive.class_name(a, b)]


def test_table_text_format():
    text = table_text()
    assert text.startswith("AA:84.9, KK:")
    assert "43s:35.7" in text
    assert get_game("holdem").table_text().startswith("AA:84.9%, KK:")


def test_monte_carlo_kernels_agree():
    fast = handeval.preflop_showdowns(C("Ah").code, C("Kh").code, 2000, 3)
    slow = handeval.python_kernel.preflop_showdowns(C("Ah").code, C("Kh").code, 2000, 3)
    assert fast == slow


# -- hold'em -----------------------------------------------------------------
def test_holdem_blinds_and_button():
    state = new_match(5)
    assert state.button is Seat.FIRST and state.to_act is Seat.FIRST
    assert state.contrib == (1, 2) and state.stacks == (99, 98)
    assert state.stage == "PreFlop" and state.board == ()


def test_holdem_fold_passes_pot_and_button():
    state = holdem_step(new_match(5), Action.FOLD)
    assert state.hand_no == 1 and state.button is Seat.SECOND
    assert sum(state.stacks) + sum(state.contrib) == 200
    # the folded small blind is gone: First has 99, minus the big blind for hand two
    assert state.stacks[0] + state.contrib[0] == 99


def test_holdem_call_check_reaches_flop():
    state = holdem_step(new_match(5), Action.CHECK_CALL)
    assert state.stage == "PreFlop" and state.to_act is Seat.SECOND
    state = holdem_step(state, Action.CHECK_CALL)
    assert state.stage == "Flop" and len(state.board) == 3 and state.to_act is Seat.SECOND


def test_holdem_raise_sizes():
    state = holdem_step(new_match(5), Action.RAISE_HALF)  # call 1 then half of pot 3 -> +1
    assert state.contrib == (3, 2)
    state = holdem_step(state, Action.RAISE_FULL)  # call 1 then pot 5 -> +6
    assert state.contrib == (3, 8)


def test_holdem_all_in_runs_out_the_board():
    state = holdem_step(new_match(5), Action.ALL_IN)
    state = holdem_step(state, Action.CHECK_CALL)
    assert state.hand_no == 1 or state.finished
    assert sum(state.stacks) + sum(state.contrib) == 200


def test_holdem_out_of_turn():
    with pytest.raises(IllegalMove):
        holdem_step(new_match(5), Action.FOLD, Seat.SECOND)


def test_holdem_chips_conserved_in_random_play():
    game = get_game("holdem")
    rng = random.Random(9)
    for seed in range(40):
        state = game.initial_state(seed)
        while game.outcome(state) is Outcome.ONGOING:
            (seat,) = game.to_move(state)
            state = game.apply(state, {seat: game.random_action(state, seat, rng)})
            assert sum(state.stacks) + sum(state.contrib) == 200
        r = game.rewards(state)
        assert r[0] + r[1] == 0 and abs(r[0]) <= 100
        assert state.hand_no < HANDS_PER_MATCH


# -- negotiation ---------------------------------------------------------------
def test_negotiation_worked_example():
    assert negotiation_oracle_value(((3, 3, 2), (2, 1, 1)), (2, 5, 0), Seat.SECOND) == 9
    assert naive.negotiation_value(((3, 3, 2), (2, 1, 1)), (2, 5, 0), 1) == 9


def test_negotiation_pools_are_worth_thirty():
    for seed in range(200):
        pool = generate_pool(derive_rng(seed, [2]))
        for vals in pool.valuations:
            assert sum(n * v for n, v in zip(pool.counts, vals)) == 30
        assert all(1 <= n <= 5 for n in pool.counts)


def test_valuation_solutions_complete():
    sols = set(valuation_solutions((1, 2, 3)))
    brute = {(a, b, c) for a in range(31) for b in range(16) for c in range(11) if a + 2 * b + 3 * c == 30}
    assert sols == brute


def test_proposal_validity():
    counts = (2, 1, 3)
    assert is_valid(((1, 0, 3), (1, 1, 0)), counts)
    assert not is_valid(((1, 0, 3), (1, 1, 1)), counts)
    assert not is_valid(((1, 0), (1, 1)), counts)
    assert len(all_proposals(counts)) == 3 * 2 * 4
    assert proposal_text(((1, 0, 3), (1, 1, 0))) == "[P1: (1,0,3), P2: (1,1,0)]"


def test_negotiation_agree_and_rewards():
    game = get_game("negotiation")
    state = NegotiationState(0, NegotiationPool((1, 1, 1), ((10, 10, 10), (0, 15, 15))))
    with pytest.raises(IllegalMove):
        negotiation_step(state, AGREE)
    state = negotiation_step(state, ((1, 0, 0), (0, 1, 1)))
    state = negotiation_step(state, AGREE)
    assert game.outcome(state) is Outcome.DRAW
    assert game.rewards(state) == (10, 30)


def test_termination_only_after_round_eight():
    assert not any(termination_fires(seed, r) for seed in range(200) for r in range(1, 9))
    fired = sum(termination_fires(seed, 9) for seed in range(2000))
    assert 300 < fired < 500


def test_negotiation_truths_and_own_value():
    game = get_game("negotiation")
    state = NegotiationState(0, NegotiationPool((1, 1, 1), ((10, 10, 10), (0, 15, 15))))
    assert [t.value for t in game.truths(state, Seat.FIRST)] == [None, None]
    own = game.truths_after_reply(state, Seat.FIRST, game.truths(state, Seat.FIRST), ((1, 1, 0), (0, 0, 1)))
    assert own[1].value == 20
    state = negotiation_step(state, ((1, 1, 0), (0, 0, 1)))
    assert game.truths(state, Seat.SECOND)[0].value == 15

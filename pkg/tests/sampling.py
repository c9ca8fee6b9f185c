"""Seeded random playouts that yield (state, seat) pairs for oracle checks."""

from __future__ import annotations

import random

from gamearena.games import get_game
from gamearena.games.base import Outcome


def sample_states(game_id: str, count: int, seed: int = 0):
    """``count`` (state, seat) pairs drawn from uniform random playouts."""
    game = get_game(game_id)
    rng = random.Random(seed)
    out = []
    match = 0
    while len(out) < count:
        state = game.initial_state(seed * 100_003 + match)
        match += 1
        for _ in range(game.max_turns):
            if game.outcome(state) is not Outcome.ONGOING:
                break
            seats = game.to_move(state)
            for seat in seats:
                out.append((state, seat))
            state = game.apply(state, {s: game.random_action(state, s, rng) for s in seats})
    return out[:count]

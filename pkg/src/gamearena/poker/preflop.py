"""Preflop win-probability table for the 169 starting-hand classes.

Entries are the percentage of showdowns a hand wins outright (ties count
as not winning) against one uniformly random opponent hand with a random
five-card board. The shipped table was produced by :func:`generate_table`
and then two entries were pinned to their published values (AA 84.9,
43s 35.7); both lie within Monte Carlo noise of the regenerated figures.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from . import handeval
from .cards import RANKS, Card

TABLE_FILE = "preflop_table.json"
PINNED = {"AA": 84.9, "43s": 35.7}


def hand_class(first: Card, second: Card) -> str:
    """Canonical class name: ``"AA"``, ``"AKs"`` or ``"AKo"``, higher rank first."""
    hi, lo = sorted((first, second), key=lambda c: c.rank, reverse=True)
    if hi.rank == lo.rank:
        return RANKS[hi.rank] * 2
    return RANKS[hi.rank] + RANKS[lo.rank] + ("s" if hi.suit == lo.suit else "o")


def all_classes() -> list[str]:
    """All 169 classes, pairs first then suited and offsuit, strongest ranks first."""
    out = [r * 2 for r in reversed(RANKS)]
    for hi in range(12, -1, -1):
        for lo in range(hi - 1, -1, -1):
            out.append(RANKS[hi] + RANKS[lo] + "s")
    for hi in range(12, -1, -1):
        for lo in range(hi - 1, -1, -1):
            out.append(RANKS[hi] + RANKS[lo] + "o")
    return out


def representative(cls: str) -> tuple[Card, Card]:
    hi, lo = RANKS.index(cls[0]), RANKS.index(cls[1])
    if len(cls) == 2:
        return Card(hi, 0), Card(lo, 1)
    return Card(hi, 0), Card(lo, 0 if cls[2] == "s" else 1)


def win_probability(cls: str, trials: int, seed: int) -> float:
    """Monte Carlo win percentage for one class."""
    a, b = representative(cls)
    wins, ties, losses = handeval.preflop_showdowns(a.code, b.code, trials, seed)
    return 100.0 * wins / (wins + ties + losses)


def generate_table(trials: int = 4_000_000, seed: int = 2024) -> dict[str, float]:
    table = {}
    for i, cls in enumerate(all_classes()):
        table[cls] = round(win_probability(cls, trials, seed + i), 1)
    table.update(PINNED)
    return table


@lru_cache(maxsize=1)
def load_table() -> dict[str, float]:
    with resources.files(__package__).joinpath(TABLE_FILE).open() as fh:
        return json.load(fh)


def preflop_oracle(hole_cards, table: dict[str, float] | None = None) -> float:
    """Ground-truth percent for a two-card private hand."""
    first, second = hole_cards
    return (table or load_table())[hand_class(first, second)]


def table_text(table: dict[str, float] | None = None) -> str:
    table = table or load_table()
    return ", ".join(f"{cls}:{table[cls]}" for cls in all_classes())


if __name__ == "__main__":  # pragma: no cover
    import sys

    out = generate_table()
    json.dump(out, sys.stdout, indent=0)

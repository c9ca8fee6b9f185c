"""Cards, decks and hand categories."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import handeval

RANKS = "23456789TJQKA"
SUITS = ("Spades", "Hearts", "Diamonds", "Clubs")
RANK_TEXT = ("2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K", "A")

CATEGORY_NAMES = {
    1: "Royal Flush",
    2: "Straight Flush",
    3: "Four of a Kind",
    4: "Full House",
    5: "Flush",
    6: "Straight",
    7: "Three of a Kind",
    8: "Two Pair",
    9: "One Pair",
    10: "High Card",
}


@dataclass(frozen=True, order=True)
class Card:
    rank: int  # 0 = deuce .. 12 = ace
    suit: int  # index into SUITS

    @property
    def code(self) -> int:
        return self.rank * 4 + self.suit

    @classmethod
    def from_code(cls, code: int) -> "Card":
        return cls(code >> 2, code & 3)

    @classmethod
    def parse(cls, text: str) -> "Card":
        """Parse ``"Hearts Q"``, ``"Clubs 10"`` or short forms like ``"Qh"``."""
        text = text.strip()
        parts = text.split()
        if len(parts) == 2:
            suit_word, rank_word = parts
            suit = next(i for i, s in enumerate(SUITS) if s.lower().startswith(suit_word.lower()[:4]))
            rank_word = rank_word.upper()
            rank = RANK_TEXT.index(rank_word) if rank_word in RANK_TEXT else RANKS.index(rank_word)
            return cls(rank, suit)
        if len(text) == 2:
            return cls(RANKS.index(text[0].upper()), "shdc".index(text[1].lower()))
        raise ValueError(f"unrecognised card {text!r}")

    def __str__(self) -> str:
        return f"{SUITS[self.suit]} {RANK_TEXT[self.rank]}"

    @property
    def short(self) -> str:
        return RANKS[self.rank] + "shdc"[self.suit]


FULL_DECK = tuple(Card(r, s) for r in range(13) for s in range(4))


def shuffled_deck(rng: random.Random) -> list[Card]:
    deck = list(FULL_DECK)
    rng.shuffle(deck)
    return deck


@dataclass(frozen=True, order=True)
class HandRank:
    """Category 1 (royal flush) .. 10 (high card) plus a comparable score."""

    score: int

    @property
    def category(self) -> int:
        return score_category(self.score)

    @property
    def tiebreak(self) -> tuple[int, ...]:
        return tuple((self.score >> shift) & 15 for shift in (16, 12, 8, 4, 0))

    @property
    def name(self) -> str:
        return CATEGORY_NAMES[self.category]


def score_category(score: int) -> int:
    internal = score >> 20
    if internal == 8:
        return 1 if (score >> 16) & 15 == 12 else 2
    return 10 - internal


def evaluate_hand(cards) -> HandRank:
    """Best five-card HandRank among 5 to 7 distinct cards."""
    cards = list(cards)
    if not 5 <= len(cards) <= 7:
        raise ValueError(f"need 5 to 7 cards, got {len(cards)}")
    codes = [c.code for c in cards]
    if len(set(codes)) != len(codes):
        raise ValueError("duplicate cards")
    return HandRank(handeval.score_cards(codes))


def naive_best_category(cards) -> int:
    """Slow reference: classify every 5-card subset directly, keep the best.

    Independent of the bitmask kernel; used to cross-check it.
    """
    best = None
    for five in itertools.combinations(cards, 5):
        key = _classify_five(five)
        if best is None or key > best:
            best = key
    return -best[0]


def _classify_five(five) -> tuple:
    ranks = sorted((c.rank for c in five), reverse=True)
    flush = len({c.suit for c in five}) == 1
    distinct = sorted(set(ranks), reverse=True)
    straight_top = None
    if len(distinct) == 5:
        if distinct[0] - distinct[4] == 4:
            straight_top = distinct[0]
        elif distinct == [12, 3, 2, 1, 0]:
            straight_top = 3
    groups = sorted(((ranks.count(r), r) for r in distinct), reverse=True)
    shape = [g[0] for g in groups]
    order = [g[1] for g in groups]
    if straight_top is not None and flush:
        strength, cat = (9, [straight_top]), (1 if straight_top == 12 else 2)
    elif shape == [4, 1]:
        strength, cat = (8, order), 3
    elif shape == [3, 2]:
        strength, cat = (7, order), 4
    elif flush:
        strength, cat = (6, ranks), 5
    elif straight_top is not None:
        strength, cat = (5, [straight_top]), 6
    elif shape == [3, 1, 1]:
        strength, cat = (4, order), 7
    elif shape == [2, 2, 1]:
        strength, cat = (3, order), 8
    elif shape == [2, 1, 1, 1]:
        strength, cat = (2, order), 9
    else:
        strength, cat = (1, ranks), 10
    # category first so max() compares like-for-like; strength breaks ties
    return (-cat, strength)

"""Pure-Python hand-evaluation kernel.

Mirrors ``_handeval.pyx`` function for function. Cards are integers
``rank * 4 + suit`` with rank 0 = deuce and rank 12 = ace.

Scores are ``category << 20 | r1 << 16 | r2 << 12 | r3 << 8 | r4 << 4 | r5``
where category runs 0 (high card) .. 8 (straight flush) and ``r1..r5`` are
the tiebreak ranks in significance order. Higher score wins.
"""

from __future__ import annotations

HIGH_CARD, PAIR, TWO_PAIR, TRIPS, STRAIGHT, FLUSH, FULL_HOUSE, QUADS, STRAIGHT_FLUSH = range(9)

_WHEEL = 0x100F  # A, 5, 4, 3, 2


def _straight_top(mask: int) -> int:
    for top in range(12, 3, -1):
        run = 0x1F << (top - 4)
        if mask & run == run:
            return top
    if mask & _WHEEL == _WHEEL:
        return 3
    return -1


def _pack(category: int, ranks) -> int:
    score = category
    for i in range(5):
        score = (score << 4) | (ranks[i] if i < len(ranks) else 0)
    return score


def _top_bits(mask: int, n: int) -> list[int]:
    out = []
    r = 12
    while r >= 0 and len(out) < n:
        if mask >> r & 1:
            out.append(r)
        r -= 1
    return out


def score_cards(cards) -> int:
    """Score the best five-card hand contained in 5 to 7 cards."""
    counts = [0] * 13
    suit_masks = [0, 0, 0, 0]
    suit_counts = [0, 0, 0, 0]
    mask = 0
    for c in cards:
        r = c >> 2
        s = c & 3
        counts[r] += 1
        suit_masks[s] |= 1 << r
        suit_counts[s] += 1
        mask |= 1 << r

    for s in range(4):
        if suit_counts[s] >= 5:
            top = _straight_top(suit_masks[s])
            if top >= 0:
                return _pack(STRAIGHT_FLUSH, [top])
            return _pack(FLUSH, _top_bits(suit_masks[s], 5))

    quads = -1
    trips: list[int] = []
    pairs: list[int] = []
    for r in range(12, -1, -1):
        n = counts[r]
        if n == 4:
            quads = r
        elif n == 3:
            trips.append(r)
        elif n == 2:
            pairs.append(r)

    if quads >= 0:
        kicker = _top_bits(mask & ~(1 << quads), 1)
        return _pack(QUADS, [quads] + kicker)
    if trips and (len(trips) > 1 or pairs):
        second = trips[1] if len(trips) > 1 else -1
        if pairs and pairs[0] > second:
            second = pairs[0]
        return _pack(FULL_HOUSE, [trips[0], second])
    top = _straight_top(mask)
    if top >= 0:
        return _pack(STRAIGHT, [top])
    if trips:
        return _pack(TRIPS, [trips[0]] + _top_bits(mask & ~(1 << trips[0]), 2))
    if len(pairs) >= 2:
        rest = mask & ~(1 << pairs[0]) & ~(1 << pairs[1])
        return _pack(TWO_PAIR, [pairs[0], pairs[1]] + _top_bits(rest, 1))
    if pairs:
        return _pack(PAIR, [pairs[0]] + _top_bits(mask & ~(1 << pairs[0]), 3))
    return _pack(HIGH_CARD, _top_bits(mask, 5))


def category_census() -> list[int]:
    """Count every 5-card hand of a 52-card deck by internal category 0..9.

    Index 9 holds royal flushes, which are split out of straight flushes.
    """
    counts = [0] * 10
    cards = [0] * 5
    for a in range(48):
        cards[0] = a
        for b in range(a + 1, 49):
            cards[1] = b
            for c in range(b + 1, 50):
                cards[2] = c
                for d in range(c + 1, 51):
                    cards[3] = d
                    for e in range(d + 1, 52):
                        cards[4] = e
                        s = score_cards(cards)
                        cat = s >> 20
                        if cat == STRAIGHT_FLUSH and (s >> 16) & 15 == 12:
                            cat = 9
                        counts[cat] += 1
    return counts


_MASK64 = (1 << 64) - 1


def _splitmix(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def preflop_showdowns(c1: int, c2: int, trials: int, seed: int) -> tuple[int, int, int]:
    """Deal ``trials`` random opponent hands and boards against ``(c1, c2)``.

    Returns ``(wins, ties, losses)`` of the fixed hand at showdown. Uses the
    same splitmix64 stream and partial shuffle as the compiled kernel, so
    both return identical counts for a given seed.
    """
    state = seed & _MASK64
    deck = [c for c in range(52) if c != c1 and c != c2]
    wins = ties = losses = 0
    for _ in range(trials):
        for k in range(7):
            i = 49 - k
            state, z = _splitmix(state)
            j = ((z >> 32) * (i + 1)) >> 32
            deck[i], deck[j] = deck[j], deck[i]
        board = deck[43:48]
        mine = score_cards([c1, c2, *board])
        theirs = score_cards([deck[49], deck[48], *board])
        if mine > theirs:
            wins += 1
        elif mine == theirs:
            ties += 1
        else:
            losses += 1
    return wins, ties, losses

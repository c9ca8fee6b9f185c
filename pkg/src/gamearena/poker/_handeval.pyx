# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hand-evaluation kernel. Same contract as ``_handeval_py``."""

from libc.stdint cimport uint64_t

cdef unsigned int ONE = 1

cdef enum:
    HIGH_CARD = 0
    PAIR = 1
    TWO_PAIR = 2
    TRIPS = 3
    STRAIGHT = 4
    FLUSH = 5
    FULL_HOUSE = 6
    QUADS = 7
    STRAIGHT_FLUSH = 8
    WHEEL = 0x100F


cdef inline int _straight_top(unsigned int mask) nogil:
    cdef int top
    cdef unsigned int run
    for top in range(12, 3, -1):
        run = 0x1F << (top - 4)
        if (mask & run) == run:
            return top
    if (mask & WHEEL) == WHEEL:
        return 3
    return -1


cdef inline int _top_bits(unsigned int mask, int n, int* out) nogil:
    cdef int r = 12
    cdef int k = 0
    while r >= 0 and k < n:
        if (mask >> r) & 1:
            out[k] = r
            k += 1
        r -= 1
    return k


cdef inline int _pack(int category, int* ranks, int n) nogil:
    cdef int score = category
    cdef int i
    for i in range(5):
        score = score << 4
        if i < n:
            score |= ranks[i]
    return score


cdef int _score(int* cards, int ncards) nogil:
    cdef int counts[13]
    cdef unsigned int suit_masks[4]
    cdef int suit_counts[4]
    cdef unsigned int mask = 0
    cdef int i, r, s, top, n
    cdef int ranks[5]
    cdef int quads = -1
    cdef int trips0 = -1, trips1 = -1, pair0 = -1, pair1 = -1
    cdef int second

    for i in range(13):
        counts[i] = 0
    for i in range(4):
        suit_masks[i] = 0
        suit_counts[i] = 0
    for i in range(ncards):
        r = cards[i] >> 2
        s = cards[i] & 3
        counts[r] += 1
        suit_masks[s] |= ONE << r
        suit_counts[s] += 1
        mask |= ONE << r

    for s in range(4):
        if suit_counts[s] >= 5:
            top = _straight_top(suit_masks[s])
            if top >= 0:
                ranks[0] = top
                return _pack(STRAIGHT_FLUSH, ranks, 1)
            n = _top_bits(suit_masks[s], 5, ranks)
            return _pack(FLUSH, ranks, n)

    for r in range(12, -1, -1):
        n = counts[r]
        if n == 4:
            quads = r
        elif n == 3:
            if trips0 < 0:
                trips0 = r
            elif trips1 < 0:
                trips1 = r
        elif n == 2:
            if pair0 < 0:
                pair0 = r
            elif pair1 < 0:
                pair1 = r

    if quads >= 0:
        ranks[0] = quads
        n = _top_bits(mask & ~(ONE << quads), 1, ranks + 1)
        return _pack(QUADS, ranks, 1 + n)
    if trips0 >= 0 and (trips1 >= 0 or pair0 >= 0):
        second = trips1
        if pair0 > second:
            second = pair0
        ranks[0] = trips0
        ranks[1] = second
        return _pack(FULL_HOUSE, ranks, 2)
    top = _straight_top(mask)
    if top >= 0:
        ranks[0] = top
        return _pack(STRAIGHT, ranks, 1)
    if trips0 >= 0:
        ranks[0] = trips0
        n = _top_bits(mask & ~(ONE << trips0), 2, ranks + 1)
        return _pack(TRIPS, ranks, 1 + n)
    if pair1 >= 0:
        ranks[0] = pair0
        ranks[1] = pair1
        n = _top_bits(mask & ~(ONE << pair0) & ~(ONE << pair1), 1, ranks + 2)
        return _pack(TWO_PAIR, ranks, 2 + n)
    if pair0 >= 0:
        ranks[0] = pair0
        n = _top_bits(mask & ~(ONE << pair0), 3, ranks + 1)
        return _pack(PAIR, ranks, 1 + n)
    n = _top_bits(mask, 5, ranks)
    return _pack(HIGH_CARD, ranks, n)


def score_cards(cards):
    """Score the best five-card hand contained in 5 to 7 cards."""
    cdef int buf[7]
    cdef int n = 0
    for c in cards:
        if n >= 7:
            raise ValueError("at most 7 cards")
        buf[n] = c
        n += 1
    return _score(buf, n)


def category_census():
    """Count every 5-card hand by internal category; index 9 = royal flush."""
    cdef long long counts[10]
    cdef int cards[5]
    cdef int a, b, c, d, e, s, cat
    for a in range(10):
        counts[a] = 0
    with nogil:
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
                            s = _score(cards, 5)
                            cat = s >> 20
                            if cat == STRAIGHT_FLUSH and ((s >> 16) & 15) == 12:
                                cat = 9
                            counts[cat] += 1
    return [counts[i] for i in range(10)]


cdef inline uint64_t _splitmix(uint64_t* state) nogil:
    state[0] += 0x9E3779B97F4A7C15ULL
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline int _below(uint64_t* state, int n) nogil:
    # Lemire multiply-shift on the top 32 bits; bias is below 2^-26 for n <= 52.
    return <int>(((_splitmix(state) >> 32) * <uint64_t>n) >> 32)


def preflop_showdowns(int c1, int c2, long long trials, uint64_t seed):
    """Deal ``trials`` random opponent hands and boards against ``(c1, c2)``.

    Returns ``(wins, ties, losses)`` of the fixed hand at showdown.
    """
    cdef int deck[50]
    cdef int mine[7]
    cdef int theirs[7]
    cdef int i, j, k, tmp, n = 0
    cdef long long t, wins = 0, ties = 0, losses = 0
    cdef int sm, st
    cdef uint64_t state = seed
    for i in range(52):
        if i != c1 and i != c2:
            deck[n] = i
            n += 1
    mine[0] = c1
    mine[1] = c2
    with nogil:
        for t in range(trials):
            # partial Fisher-Yates: the last 7 slots become the draw
            for k in range(7):
                i = 49 - k
                j = _below(&state, i + 1)
                tmp = deck[i]
                deck[i] = deck[j]
                deck[j] = tmp
            theirs[0] = deck[49]
            theirs[1] = deck[48]
            for k in range(5):
                mine[2 + k] = deck[47 - k]
                theirs[2 + k] = deck[47 - k]
            sm = _score(mine, 7)
            st = _score(theirs, 7)
            if sm > st:
                wins += 1
            elif sm == st:
                ties += 1
            else:
                losses += 1
    return wins, ties, losses

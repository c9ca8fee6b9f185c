"""Deterministic random streams keyed by a base seed and integer labels."""

from __future__ import annotations

import hashlib
import random
import struct

# Stream labels used by games and the engine.
DECK = 1
POOL = 2
TERMINATION = 3
SERVE = 4
AGENT = 5
FALLBACK = 6
MATCH = 7


def derive_seed(base_seed: int, labels) -> int:
    """Mix ``base_seed`` and ``labels`` into a 64-bit seed.

    Uses SHA-256 over fixed-width encodings, so the result is identical on
    every platform and Python version.
    """
    h = hashlib.sha256()
    h.update(struct.pack("<Q", base_seed & 0xFFFFFFFFFFFFFFFF))
    for label in labels:
        h.update(struct.pack("<q", int(label)))
    return int.from_bytes(h.digest()[:8], "little")


def derive_rng(base_seed: int, labels) -> random.Random:
    return random.Random(derive_seed(base_seed, labels))

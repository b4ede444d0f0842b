"""Reproducible randomness.

Every random stream is a ``random.Random`` (Mersenne Twister) seeded with the
first 8 bytes of SHA-256 over the run seed and a label path, e.g.
``rng_for(42, "census", 7)``. Streams never share state, so results do not
depend on evaluation order.
"""
from __future__ import annotations

import hashlib
import random

MAX_SEED = 2**63 - 1


def rng_for(seed: int, *labels) -> random.Random:
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be in [0, 2^63 - 1], got {seed}")
    key = ":".join([str(seed), *map(str, labels)]).encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))

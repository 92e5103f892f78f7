"""Deterministic seed derivation.

Every random draw in the package comes from a ``random.Random`` seeded by
``derived_seed(master, *tags)``. The derivation goes through SHA-256 so it
is stable across processes, platforms and PYTHONHASHSEED, which is what
makes parallel sampling schedule-independent.
"""

import hashlib
import random


def derived_seed(*parts: int | str) -> int:
    blob = "|".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def rng(*parts: int | str) -> random.Random:
    return random.Random(derived_seed(*parts))

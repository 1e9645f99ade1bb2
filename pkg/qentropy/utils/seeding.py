"""
Seeded random streams.

All randomness in the package comes from numpy Generators built here, so a
run is reproducible from its integer seed alone.
"""

import hashlib
from typing import Union

import numpy as np

SeedPart = Union[int, str, float, None]


def _as_int(part: SeedPart) -> int:
    if isinstance(part, (int, np.integer)) and part >= 0:
        return int(part)
    digest = hashlib.sha256(repr(part).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def derive_seed(*parts: SeedPart) -> int:
    """Hash an ordered tuple of labels into a 63-bit seed."""
    entropy = [_as_int(part) for part in parts]
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1])) & ((1 << 63) - 1)


def make_rng(*parts: SeedPart) -> np.random.Generator:
    """Independent generator for the stream identified by ``parts``."""
    return np.random.default_rng(np.random.SeedSequence([_as_int(p) for p in parts]))

"""Seeded random streams.

PCG64 is the fixed generator: one seed, one draw sequence, identical on
every platform. Derived streams (per cycle, per purpose) come from
SeedSequence spawn keys so consumers never share or race a stream.
"""

import numpy as np


def rng_stream(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def derived_stream(seed: int, *keys: int) -> np.random.Generator:
    """Independent stream for (seed, keys); stable across runs."""
    seq = np.random.SeedSequence(entropy=seed, spawn_key=tuple(keys))
    return np.random.Generator(np.random.PCG64(seq))

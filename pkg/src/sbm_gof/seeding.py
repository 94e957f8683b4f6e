"""Seed derivation.

Every stochastic routine takes an integer seed. Child streams are derived
from ``(seed, key, ...)`` through ``SeedSequence`` and drive a Philox
(counter-based) bit generator, so a trial's stream depends only on its key
path and never on execution order.
"""

import numpy as np


def make_rng(seed, *keys) -> np.random.Generator:
    entropy = [_check(seed), *(_check(k) for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def derive_seed(seed, *keys) -> int:
    """A 63-bit integer seed for the child stream ``(seed, *keys)``."""
    entropy = [_check(seed), *(_check(k) for k in keys)]
    return int(np.random.SeedSequence(entropy).generate_state(2, np.uint32).view(np.uint64)[0] >> np.uint64(1))


def _check(v) -> int:
    v = int(v)
    if v < 0:
        raise ValueError(f"seeds must be non-negative integers, got {v}")
    return v

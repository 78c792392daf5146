"""Deterministic seed derivation for reproducible experiments.

Per-trial seeds are derived from (master seed, trial index) with the
SplitMix64 finalizer, so trial i always sees the same random stream no
matter how trials are ordered or distributed over workers.
"""

from __future__ import annotations

import random

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """SplitMix64 finalizer: avalanching 64-bit hash of an integer."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, index: int) -> int:
    """64-bit seed for sub-stream `index` of the stream named by `master`."""
    return mix64(mix64(master + _GOLDEN) ^ (index + _GOLDEN))


def trial_rng(master: int, index: int) -> random.Random:
    """Fresh RNG for one trial, reproducible from (master, index) alone."""
    return random.Random(derive_seed(master, index))

"""Seed derivation and stream splitting for reproducible randomized routines."""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """Scramble an integer into a well-mixed 64-bit seed (splitmix64 finalizer)."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Seed for retry attempt `index` of a run keyed by `seed`."""
    return splitmix64(seed + index)


def stream(seed: int) -> np.random.Generator:
    """Single generator for `seed`."""
    return np.random.default_rng(seed)


def round_streams(seed: int, rounds: int) -> list[np.random.Generator]:
    """Pre-split per-round generators; independent of execution schedule."""
    children = np.random.SeedSequence(seed).spawn(rounds)
    return [np.random.default_rng(child) for child in children]

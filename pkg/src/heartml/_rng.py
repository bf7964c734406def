"""Seeded randomness primitives shared by the splitters and ensembles.

The dataset split shuffle uses splitmix64 directly so the permutation is
fully specified by this file and stable across numpy versions.  Heavier
samplers (bootstrap draws, feature subsets, weight init) use numpy
generators seeded through :func:`derive_seed`.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer: a fixed 64-bit bijective scrambler."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Mix a base seed with a stream index (tree number, fold number, ...).

    The mapping is fixed so per-index work can run in any order, or in
    parallel, and still reproduce the sequential result bit for bit.
    """
    return mix64((seed + (index + 1) * _GOLDEN) & _MASK64)


class SplitMix64:
    """Minimal splitmix64 stream generator."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection sampling (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = ((_MASK64 + 1) // bound) * bound
        while True:
            u = self.next_u64()
            if u < threshold:
                return u % bound

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates shuffle of range(n)."""
        perm = np.arange(n)
        for i in range(n - 1, 0, -1):
            j = self.next_below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm


def generator(seed: int, index: int = 0) -> np.random.Generator:
    """numpy Generator seeded from (seed, index) through the fixed mixer."""
    return np.random.default_rng(derive_seed(seed, index))

"""Deterministic pseudo-random numbers, identical on every platform.

All randomness in this package flows through SplitMix64 so that seeded runs
are bit-reproducible regardless of interpreter, OS, or numpy version.  The
exact algorithm (constants, float construction, shuffling, normal deviates)
is part of the file-format contract and documented in docs/FORMATS.md.
"""
from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Stable sub-stream seed for (seed, index); used to fan out pair/video streams."""
    return mix64((seed & _MASK) ^ mix64((index + 1) * _GAMMA))


class SplitMix64:
    """Counter-based SplitMix64 stream.

    Output i (1-based) is mix64(seed + i*GAMMA), so scalar draws and
    vectorized numpy draws produce the same stream.
    """

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self._count = 0

    def _block(self, n: int) -> np.ndarray:
        idx = np.arange(self._count + 1, self._count + n + 1, dtype=np.uint64)
        self._count += n
        z = (idx * np.uint64(_GAMMA) + np.uint64(self.seed)).astype(np.uint64)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))

    def next_uint64(self) -> int:
        self._count += 1
        return mix64(self.seed + self._count * _GAMMA)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def floats(self, n: int) -> np.ndarray:
        return (self._block(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] via floor(u * span); span must be positive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + int(self.next_float() * (hi - lo + 1))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates with j = floor(u * (i+1))."""
        for i in range(len(items) - 1, 0, -1):
            j = int(self.next_float() * (i + 1))
            items[i], items[j] = items[j], items[i]

    def normals(self, n: int) -> np.ndarray:
        """Standard normal deviates via Box-Muller on consecutive uniform pairs.

        u1 is shifted into (0, 1] so log(u1) is finite; output order is
        (cos, sin) per pair, truncated to n.
        """
        pairs = (n + 1) // 2
        raw = (self._block(2 * pairs) >> np.uint64(11)).astype(np.float64)
        u1 = (raw[0::2] + 1.0) * 2.0**-53
        u2 = raw[1::2] * 2.0**-53
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * math.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = r * np.cos(theta)
        out[1::2] = r * np.sin(theta)
        return out[:n]

    def normal_matrix(self, rows: int, cols: int) -> np.ndarray:
        return self.normals(rows * cols).reshape(rows, cols)

"""
Seeded SplitMix64 generator.
The 64-bit stream depends only on the seed, so it is identical on every platform.
"""

from typing import List

import numpy as np

from ..errors import ArgumentError
from .matrix import Matrix

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_TO_UNIT = 1.0 / float(1 << 53)


class Rng:
    """
    SplitMix64 state machine. Single owner; not safe to share between threads.
    Draws are vectorised: the k-th state after `s` is s + k*gamma (mod 2^64).
    """

    def __init__(self, seed: int):
        if seed < 0:
            raise ArgumentError(f"seed must be non-negative, got {seed}")
        self._state = int(seed) & _MASK

    @property
    def state(self) -> int:
        return self._state

    def next_u64_block(self, n: int) -> np.ndarray:
        """Next n raw 64-bit outputs, advancing the state by n steps."""
        if n < 0:
            raise ArgumentError(f"block size must be non-negative, got {n}")
        steps = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self._state) + steps * np.uint64(_GAMMA)
            z = (z ^ (z >> np.uint64(30))) * _MIX1
            z = (z ^ (z >> np.uint64(27))) * _MIX2
            z = z ^ (z >> np.uint64(31))
        self._state = (self._state + n * _GAMMA) & _MASK
        return z

    def next_u64(self) -> int:
        return int(self.next_u64_block(1)[0])

    def random(self, n: int) -> np.ndarray:
        """n doubles in [0, 1) built from the top 53 bits of each output."""
        z = self.next_u64_block(n)
        return (z >> np.uint64(11)).astype(np.float64) * _TO_UNIT

    def uniform(self, lo: float, hi: float, rows: int, cols: int) -> Matrix:
        if not lo < hi:
            raise ArgumentError(f"uniform needs lo < hi, got lo={lo}, hi={hi}")
        if rows < 1 or cols < 1:
            raise ArgumentError(f"uniform needs positive shape, got {rows}x{cols}")
        u = self.random(rows * cols)
        draws = lo + (hi - lo) * u
        # lo + (hi-lo)*u can round up to hi
        draws = np.minimum(draws, np.nextafter(hi, lo))
        return Matrix._wrap(draws.reshape(rows, cols))

    def normal(self, mean: float, sd: float, n: int) -> np.ndarray:
        """Box-Muller over pairs of uniforms; one normal per pair."""
        if sd < 0:
            raise ArgumentError(f"sd must be non-negative, got {sd}")
        if n == 0:
            return np.zeros(0)
        u = self.random(2 * n)
        u1 = 1.0 - u[0::2]  # (0, 1], safe for log
        u2 = u[1::2]
        z = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
        return mean + sd * z

    def permutation(self, n: int) -> List[int]:
        """Fisher-Yates shuffle of range(n) driven by the stream."""
        order = list(range(n))
        if n < 2:
            return order
        draws = self.next_u64_block(n - 1)
        for k, i in enumerate(range(n - 1, 0, -1)):
            j = int(draws[k]) % (i + 1)
            order[i], order[j] = order[j], order[i]
        return order

    def spawn(self) -> "Rng":
        """Independent child generator seeded from the next output."""
        return Rng(self.next_u64())


def rng_uniform(rng: Rng, lo: float, hi: float, rows: int, cols: int) -> Matrix:
    return rng.uniform(lo, hi, rows, cols)

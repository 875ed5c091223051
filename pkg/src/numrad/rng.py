"""Portable seeded random stream: SplitMix64 words, Box-Muller Gaussians.

The k-th SplitMix64 output depends only on ``seed + k * GAMMA`` so blocks of
words are generated with wrapping ``uint64`` array arithmetic and the stream
is bit-identical to the scalar recurrence.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def splitmix64(seed: int, index: int) -> int:
    """The ``index``-th (1-based) output of the SplitMix64 stream seeded at ``seed``.

    Used as a hash of ``(seed, index)``, e.g. to derive per-trial sub-seeds.
    """
    state = np.array([(seed + index * GAMMA) & MASK64], dtype=np.uint64)
    return int(_mix(state)[0])


class SplitMix64:
    """Deterministic stream of 64-bit words, uniforms and Gaussians."""

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self.counter = 0

    def words(self, k: int) -> np.ndarray:
        k = int(k)
        if k < 0:
            raise ValueError("k must be nonnegative")
        steps = np.arange(self.counter + 1, self.counter + 1 + k, dtype=np.uint64)
        self.counter += k
        with np.errstate(over="ignore"):
            states = np.uint64(self.seed) + steps * np.uint64(GAMMA)
            return _mix(states)

    def next_u64(self) -> int:
        return int(self.words(1)[0])

    def uniform(self, k: int) -> np.ndarray:
        """``k`` doubles in ``[0, 1)`` from the top 53 bits of each word."""
        return (self.words(k) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def normal(self, k: int) -> np.ndarray:
        """``k`` standard normal variates by Box-Muller on pairs of uniforms."""
        m = (int(k) + 1) // 2
        u = self.uniform(2 * m).reshape(m, 2)
        radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))  # 1 - u lies in (0, 1]
        angle = 2.0 * np.pi * u[:, 1]
        z = np.empty((m, 2))
        z[:, 0] = radius * np.cos(angle)
        z[:, 1] = radius * np.sin(angle)
        return z.reshape(-1)[:k]

    def complex_normal(self, shape) -> np.ndarray:
        """Standard complex Gaussians (``E|z|^2 = 1``) of the given shape."""
        shape = (shape,) if np.isscalar(shape) else tuple(shape)
        size = int(np.prod(shape))
        z = self.normal(2 * size).reshape(size, 2)
        return ((z[:, 0] + 1j * z[:, 1]) / np.sqrt(2.0)).reshape(shape)

    def unit_vector(self, n: int) -> np.ndarray:
        v = self.complex_normal(n)
        return v / np.linalg.norm(v)

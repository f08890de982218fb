"""SplitMix64: a 64-bit counter-based mixing generator, identical on every platform.

state <- state + 0x9E3779B97F4A7C15 (mod 2^64), then the output is
z = state; z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9; z = (z ^ z >> 27) * 0x94D049BB133111EB; z ^ z >> 31.
"""

from __future__ import annotations

import os
from typing import Sequence, TypeVar

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SEED_ENV = "QUADRA_SEED"

T = TypeVar("T")


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def resolve_seed(seed: int | None, default: int = 0) -> int:
    """QUADRA_SEED in the environment wins over an explicit seed."""
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        return int(env.strip(), 0)
    return default if seed is None else seed


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK

    @classmethod
    def for_trial(cls, seed: int, trial: int) -> "SplitMix64":
        """Independent stream for trial ``trial``, so trials can run in any order."""
        return cls(mix64((seed & MASK) ^ mix64(trial * GOLDEN + 1)))

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def random(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)

    def choice(self, items: Sequence[T]) -> T:
        return items[self.below(len(items))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

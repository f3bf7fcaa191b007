"""Plain Eratosthenes sieve and an immutable prime table for theta sums."""

from __future__ import annotations

import math
from bisect import bisect_right

import numpy as np


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit as a sorted int64 array."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[p]:
            is_prime[p * p :: 2 * p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


class PrimeTable:
    """Primes up to a fixed limit with their logs; read-only after construction.

    Safe to share between threads.
    """

    def __init__(self, limit: int):
        self.limit = int(limit)
        self.primes = primes_upto(self.limit)
        self.logs = np.log(self.primes.astype(np.float64))
        self.primes.setflags(write=False)
        self.logs.setflags(write=False)
        self._plist = self.primes.tolist()

    def count_upto(self, x: int) -> int:
        return bisect_right(self._plist, x)

    def slice_between(self, lo: int, hi: int) -> slice:
        """Index slice of the primes p with lo < p <= hi (integer bounds)."""
        if hi > self.limit:
            raise ValueError(f"table only reaches {self.limit}, asked for {hi}")
        return slice(bisect_right(self._plist, lo), bisect_right(self._plist, hi))

    def in_class(self, lo: int, hi: int, h: int, k: int) -> np.ndarray:
        s = self.slice_between(lo, hi)
        chunk = self.primes[s]
        if h == 1:
            return chunk
        return chunk[chunk % h == k % h]

    def log_sum(self, lo: int, hi: int, h: int, k: int) -> float:
        """Compensated sum of log p over primes lo < p <= hi with p = k (mod h)."""
        s = self.slice_between(lo, hi)
        logs = self.logs[s]
        if h != 1:
            logs = logs[self.primes[s] % h == k % h]
        return math.fsum(logs.tolist())

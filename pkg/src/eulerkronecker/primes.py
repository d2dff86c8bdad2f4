"""Prime enumeration: a segmented sieve of Eratosthenes and prime-power listing."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

SIEVE_CAPACITY = 10**8
MAX_PRIME_POWER = 2**62
SEGMENT_SIZE = 1 << 20


class CapacityError(ValueError):
    """Requested range exceeds what the sieve or the integer encoding supports."""


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def segmented_sieve(limit: int, segment_size: int = SEGMENT_SIZE) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array."""
    if limit > SIEVE_CAPACITY:
        raise CapacityError(f"sieve limit {limit} exceeds capacity {SIEVE_CAPACITY}")
    if limit < 2:
        return np.array([], dtype=np.int64)
    root = math.isqrt(limit)
    base = _simple_sieve(root)
    if root == limit:
        return base
    chunks = [base]
    low = root + 1
    while low <= limit:
        high = min(low + segment_size, limit + 1)
        mask = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low :: p] = False
        chunks.append(np.flatnonzero(mask).astype(np.int64) + low)
        low = high
    return np.concatenate(chunks)


_lock = threading.Lock()
_cache: np.ndarray = np.array([], dtype=np.int64)
_cache_limit = 1


def primes_up_to(limit: int) -> np.ndarray:
    """Primes <= limit from a process-wide cache that only ever grows."""
    global _cache, _cache_limit
    with _lock:
        if limit > _cache_limit:
            if limit > SIEVE_CAPACITY:
                raise CapacityError(f"sieve limit {limit} exceeds capacity {SIEVE_CAPACITY}")
            # grow geometrically so repeated small extensions stay cheap
            new_limit = min(max(limit, 2 * _cache_limit, 1 << 16), SIEVE_CAPACITY)
            _cache = segmented_sieve(new_limit)
            _cache_limit = new_limit
        cache = _cache
    return cache[: np.searchsorted(cache, limit, side="right")]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n <= SIEVE_CAPACITY:
        primes = primes_up_to(max(n, 2))
        i = np.searchsorted(primes, n)
        return i < len(primes) and primes[i] == n
    return all(n % int(p) for p in primes_up_to(math.isqrt(n)))


@dataclass(frozen=True, order=True)
class PrimePower:
    """q = p**m with p prime and m >= 1. Orders by q."""

    q: int
    p: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"exponent must be >= 1, got {self.m}")
        if self.q > MAX_PRIME_POWER:
            raise CapacityError(f"prime power {self.q} exceeds 2^62")
        if self.p**self.m != self.q:
            raise ValueError(f"{self.q} != {self.p}^{self.m}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def of(cls, p: int, m: int = 1) -> "PrimePower":
        return cls(p**m, p, m)

    @classmethod
    def from_int(cls, q: int) -> "PrimePower":
        """Factor q as a prime power; ValueError if it is not one."""
        if q < 2:
            raise ValueError(f"{q} is not a prime power")
        if q > MAX_PRIME_POWER:
            raise CapacityError(f"prime power {q} exceeds 2^62")
        for m in range(q.bit_length(), 0, -1):
            p = round(q ** (1.0 / m))
            for cand in (p - 1, p, p + 1):
                if cand >= 2 and cand**m == q and is_prime(cand):
                    return cls(q, cand, m)
        raise ValueError(f"{q} is not a prime power")

    def __int__(self):
        return self.q

    def __str__(self):
        return str(self.q) if self.m == 1 else f"{self.p}^{self.m}"


def prime_powers(limit_q: int, m_max: int) -> list[PrimePower]:
    """All p**m <= limit_q with 1 <= m <= m_max, sorted by q."""
    if limit_q < 2 or m_max < 1:
        raise ValueError("need limit_q >= 2 and m_max >= 1")
    if limit_q > MAX_PRIME_POWER:
        raise CapacityError(f"limit {limit_q} exceeds 2^62")
    out = []
    for p in primes_up_to(min(limit_q, SIEVE_CAPACITY)):
        p = int(p)
        q = p
        for m in range(1, m_max + 1):
            if q > limit_q:
                break
            out.append(PrimePower(q, p, m))
            q *= p
    out.sort()
    return out

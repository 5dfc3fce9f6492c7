"""Prime and von Mangoldt tables, plus exact prime-power detection.

Lambda values are kept in factor form ``(p, m)`` with ``p**m == n``; the
logarithm is taken by the caller at summation time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError

WORD_LIMIT = 1 << 63

# Deterministic Miller-Rabin: these bases are exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

PrimePower = Tuple[int, int]


def iroot(n: int, k: int) -> int:
    """Floor of the real k-th root of ``n >= 0``, exact for any size."""
    if n < 0:
        raise DomainError("iroot of a negative number")
    if k < 1:
        raise DomainError("root index must be >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton from an upper bound 2**ceil(bits/k).
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``n < 3.3e24``."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power(n: int) -> Optional[PrimePower]:
    """Return ``(p, m)`` with ``p**m == n`` and p prime, or None.

    Only prime-power detection is attempted, never general factorisation.
    """
    if n < 1:
        raise DomainError(f"prime_power needs n >= 1, got {n}")
    if n >= WORD_LIMIT:
        raise OverflowError(f"argument {n} exceeds the 63-bit word limit")
    if n == 1:
        return None
    for p in _SMALL_PRIMES:
        if n % p == 0:
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            return (p, m) if n == 1 else None
    if is_prime(n):
        return (n, 1)
    # No factor below 100, so the exponent is at most log_101(n).
    kmax = int(math.log(n, 101)) + 1
    for k in range(2, kmax + 1):
        r = iroot(n, k)
        if r ** k == n and is_prime(r):
            return (r, k)
    return None


def lambda_of(n: int) -> float:
    """von Mangoldt function in binary64: log p if n = p**m else 0."""
    pp = prime_power(n)
    return math.log(pp[0]) if pp else 0.0


def primes_up_to(limit: int) -> np.ndarray:
    """Ascending int64 array of the primes <= limit (Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if sieve[i]:
            sieve[i * i::2 * i] = False
    return np.flatnonzero(sieve).astype(np.int64)


@dataclass(frozen=True, eq=False)
class LambdaTable:
    """Read-only sieve table of Lambda in factor form for 1 <= n <= limit.

    ``base[n]`` is the prime p when n = p**m (0 otherwise) and
    ``exponent[n]`` is m.
    """

    limit: int
    base: np.ndarray
    exponent: np.ndarray

    def __post_init__(self):
        self.base.setflags(write=False)
        self.exponent.setflags(write=False)

    def __getitem__(self, n: int) -> Optional[PrimePower]:
        if not 1 <= n <= self.limit:
            raise IndexError(f"{n} outside table range [1, {self.limit}]")
        p = int(self.base[n])
        return (p, int(self.exponent[n])) if p else None

    def log_value(self, n: int) -> float:
        p = int(self.base[n])
        return math.log(p) if p else 0.0

    def psi(self) -> float:
        """Chebyshev psi(limit), summed with math.fsum."""
        ps = self.base[self.base > 0]
        uniq, counts = np.unique(ps, return_counts=True)
        return math.fsum(c * math.log(int(p)) for p, c in zip(uniq, counts))


def build_lambda_table(limit: int) -> LambdaTable:
    if limit < 1:
        raise DomainError("LambdaTable limit must be >= 1")
    if limit >= WORD_LIMIT:
        raise OverflowError("LambdaTable limit exceeds the 63-bit word limit")
    base = np.zeros(limit + 1, dtype=np.int64)
    exponent = np.zeros(limit + 1, dtype=np.int8)
    primes = primes_up_to(limit)
    powers = primes.copy()
    m = 1
    while powers.size:
        base[powers] = primes[: powers.size]
        exponent[powers] = m
        m += 1
        keep = primes[: powers.size] <= limit // powers
        powers = powers[keep] * primes[: powers.size][keep]
    return LambdaTable(limit, base, exponent)


def factor_lookup(n: int, table: Optional[LambdaTable] = None) -> Optional[PrimePower]:
    """Prime-power factor of n, using ``table`` when it covers n."""
    if table is not None and 1 <= n <= table.limit:
        return table[n]
    return prime_power(n)

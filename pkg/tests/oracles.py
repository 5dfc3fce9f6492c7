"""Slow, obviously-correct reference implementations used only by tests."""
import math


def trial_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def trial_prime_power(n):
    """(p, m) by trial division, or None."""
    if n < 2:
        return None
    d = 2
    while d * d <= n:
        if n % d == 0:
            m = 0
            while n % d == 0:
                n //= d
                m += 1
            return (d, m) if n == 1 else None
        d += 1
    return (n, 1)


def trial_lambda(n):
    pp = trial_prime_power(n)
    return math.log(pp[0]) if pp else 0.0


def bytearray_sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i::i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]

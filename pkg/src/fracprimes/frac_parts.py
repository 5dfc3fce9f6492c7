"""Fractional parts of roots of primes in thin sequences.

Fractional parts are never formed as ``r - floor(r)`` in floating point.
Integer parts come from exact integer roots and the remainder from a
rationalised expression (or from mpmath when no closed form exists).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import mpmath

from .arith import iroot, is_prime, primes_up_to
from .census import floor_rational_power, resolve_beta
from .errors import DomainError

EULER_GAMMA = 0.57721566490153286
QUAD_CONSTANT = 0.51
CUBIC_CONSTANT = 0.70
# Smallest n at which each bound is asserted; below it, misses are informational.
QUAD_N_MIN = 4
CUBIC_N_MIN = 2


@dataclass(frozen=True)
class FracPartSample:
    n: int
    p: int
    frac: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.frac / self.bound


@dataclass(frozen=True)
class FracPartReport:
    samples: Tuple[FracPartSample, ...]
    total: float
    n_min: int

    @property
    def violations(self) -> List[FracPartSample]:
        """Samples at n >= n_min where frac >= bound."""
        return [s for s in self.samples if s.n >= self.n_min and s.ratio >= 1]

    @property
    def exceptions(self) -> List[FracPartSample]:
        """Small-n misses, outside the range where the bound is asserted."""
        return [s for s in self.samples if s.n < self.n_min and s.ratio >= 1]

    @property
    def max_ratio(self) -> float:
        return max((s.ratio for s in self.samples), default=0.0)


def quad_frac(n: int) -> float:
    """{sqrt(n^2 + 1)} = 1/(sqrt(n^2+1) + n)."""
    return 1.0 / (math.sqrt(n * n + 1) + n)


def cubic_frac(n: int) -> float:
    """{(n^3 + 2)^(1/3)} = 2/(r^2 + n r + n^2) with r = (n^3+2)^(1/3)."""
    r = (n ** 3 + 2) ** (1.0 / 3.0)
    return 2.0 / (r * r + n * r + n * n)


def quad_frac_parts(x: int, c: float = QUAD_CONSTANT, n_min: int = QUAD_N_MIN) -> FracPartReport:
    """Primes p = n^2 + 1 <= x with {sqrt p} checked against c/sqrt(p)."""
    if x < 2:
        raise DomainError("x must be >= 2")
    samples = []
    for n in range(1, math.isqrt(x - 1) + 1):
        p = n * n + 1
        if is_prime(p):
            samples.append(FracPartSample(n, p, quad_frac(n), c / math.sqrt(p)))
    return FracPartReport(tuple(samples), math.fsum(s.frac for s in samples), n_min)


def cubic_frac_parts(x: int, c: float = CUBIC_CONSTANT, n_min: int = CUBIC_N_MIN) -> FracPartReport:
    """Primes p = n^3 + 2 <= x with {p^(1/3)} checked against c/p^(2/3)."""
    if x < 3:
        raise DomainError("x must be >= 3")
    samples = []
    for n in range(1, iroot(x - 2, 3) + 1):
        p = n ** 3 + 2
        if is_prime(p):
            samples.append(FracPartSample(n, p, cubic_frac(n), c / p ** (2.0 / 3.0)))
    return FracPartReport(tuple(samples), math.fsum(s.frac for s in samples), n_min)


def _frac_root(p: int, alpha: Fraction) -> float:
    """{p^(1/alpha)}; the integer part is exact whenever alpha is an integer."""
    with mpmath.workdps(40):
        root = mpmath.power(p, mpmath.mpf(alpha.denominator) / alpha.numerator)
        if alpha.denominator == 1:
            whole = iroot(p, alpha.numerator)
        else:
            # floor(p^(b/a)) = floor of the a-th root of p^b, exact in integers.
            whole = iroot(p ** alpha.denominator, alpha.numerator)
        return float(root - whole)


def ps_frac_parts(alpha, beta, x: int) -> FracPartReport:
    """Primes p = floor(n^beta) + 1 <= x with {p^(1/alpha)}.

    ``bound`` holds 1/p^(1 - 1/alpha), so ``ratio`` is the implied constant and
    ``max_ratio`` its empirical maximum.
    """
    a = resolve_beta(alpha)
    b = resolve_beta(beta)
    if a <= 1:
        raise DomainError("alpha must exceed 1")
    if not Fraction(1) <= b <= Fraction(12, 11):
        raise DomainError("beta must lie in [1, 12/11]")
    if x < 2:
        raise DomainError("x must be >= 2")
    expo = 1.0 - 1.0 / float(a)
    samples = []
    n = 1
    while True:
        p = floor_rational_power(n, b.numerator, b.denominator) + 1
        if p > x:
            break
        if is_prime(p):
            samples.append(FracPartSample(n, p, _frac_root(p, a), p ** -expo))
        n += 1
    return FracPartReport(tuple(samples), math.fsum(s.frac for s in samples), 1)


def dlvp_sum(x: int) -> float:
    """sum over primes p <= x of {x/p}, with the floor done in integers."""
    if x < 2:
        raise DomainError("x must be >= 2")
    return math.fsum((x % int(p)) / int(p) for p in primes_up_to(x))


def dlvp_main_term(x: int) -> float:
    """(1 - gamma) x / log x."""
    return (1.0 - EULER_GAMMA) * x / math.log(x)

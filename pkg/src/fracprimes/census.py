"""Prime censuses over fractional sequences floor(x/n) and related sequences.

Every census over floor(x/n) walks the block decomposition, so a value v
contributes once with its multiplicity instead of once per n.

Two counts are reported wherever the set notation is ambiguous:
``distinct_prime_count`` counts distinct primes (or prime pairs), and
``multiplicity_count`` counts the integers n <= x whose quotient yields one.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .arith import LambdaTable, factor_lookup, iroot, is_prime, primes_up_to
from .density import (TABLE_CAP, density_series, density_series_pair, shared_table)
from .errors import DomainError
from .floor_sum import decompose, floor_weighted_sum
from .poly import IntPolynomial, evaluate

AUTO_TERMS = 10**5
THREADS_ENV = "FRACPRIMES_THREADS"

ALPHA_PRESETS = {
    "sqrt2": "1.41421356237309504880168872421",
    "pi": "3.14159265358979323846264338328",
    "e": "2.71828182845904523536028747135",
}
# Exactly representable alphas with a denominator this small are treated as rational.
RATIONAL_DENOMINATOR_CUTOFF = 1000


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class CensusRecord:
    x: int
    weighted_sum: float
    predicted: float
    residual: float
    distinct_prime_count: int
    multiplicity_count: int


@dataclass(frozen=True)
class GaussianTwinPair:
    n: int
    p: int
    pair: Tuple[Tuple[int, int], Tuple[int, int]]

    def norms(self) -> Tuple[int, int]:
        return tuple(a * a + b * b for a, b in self.pair)

    def difference(self) -> Tuple[int, int]:
        (a1, b1), (a2, b2) = self.pair
        return (a2 - a1, b2 - b1)


@dataclass(frozen=True)
class PrimeSequence:
    """Primes found in an integer sequence, with the index n of each."""

    primes: Tuple[int, ...]
    indices: Tuple[int, ...]
    limit: int
    predicted: float
    unstable: Tuple[int, ...] = ()


def _abs_value(g: IntPolynomial, v: int) -> int:
    try:
        return abs(evaluate(g, v, max_bits=63))
    except OverflowError:
        raise OverflowError(f"|{g}| at block value {v} exceeds the 63-bit range") from None


def _table_for(polys: Sequence[IntPolynomial], x: int) -> LambdaTable:
    bound = 2
    for g in polys:
        bound = max(bound, abs(evaluate(g, 1)), abs(evaluate(g, x)))
    return shared_table(min(bound, TABLE_CAP))


@lru_cache(maxsize=64)
def _density(g: IntPolynomial, N: int, weight: str = "lambda") -> float:
    return density_series(g, N, weight=weight).partial_sum


@lru_cache(maxsize=64)
def _pair_density(g1: IntPolynomial, g2: IntPolynomial, N: int) -> float:
    return density_series_pair(g1, g2, N).partial_sum


def weighted_census(g: IntPolynomial, x: int, *, table: Optional[LambdaTable] = None,
                    auto_terms: int = AUTO_TERMS, weight: str = "lambda") -> CensusRecord:
    """S(x) = sum_{n<=x} Lambda(|g(floor(x/n))|), against density * x.

    The density is the series partial sum at N = min(auto_terms, x), with
    the same ``weight`` ("lambda" or "theta"; see :mod:`fracprimes.density`).
    ``distinct_prime_count`` here counts distinct prime-power values hit.
    """
    if weight not in ("lambda", "theta"):
        raise DomainError(f"unknown weight {weight!r}")
    if x < 1:
        raise DomainError("x must be >= 1")
    if g.is_zero:
        raise DomainError("census of the zero polynomial")
    _abs_value(g, x)
    if table is None:
        table = _table_for([g], x)
    blocks = decompose(x)
    factors: Dict[int, Optional[Tuple[int, int]]] = {}

    def w(v: int) -> float:
        m = _abs_value(g, v)
        fac = factor_lookup(m, table) if m else None
        if fac and weight == "theta" and fac[1] > 1:
            fac = None
        factors[v] = fac
        return math.log(fac[0]) if fac else 0.0

    total = floor_weighted_sum(x, w, blocks)
    hits = {v: fac for v, fac in factors.items() if fac}
    mult = sum(c for v, c in blocks if v in hits)
    distinct = len({_abs_value(g, v) for v in hits})
    predicted = _density(g, min(auto_terms, x), weight) * x
    return CensusRecord(x, total, predicted, total - predicted, distinct, mult)


def fractional_prime_count(g: IntPolynomial, x: int) -> CensusRecord:
    """Primes p = |g(v)| <= x with v = floor(x/n), against x^(1/d)/log x."""
    if x < 1:
        raise DomainError("x must be >= 1")
    if g.degree < 1:
        raise DomainError("counting needs a nonconstant polynomial")
    distinct = set()
    mult = 0
    weighted = []
    for v, c in decompose(x):
        p = _abs_value(g, v)
        if p <= x and is_prime(p):
            distinct.add(p)
            mult += c
            weighted.append(c * math.log(p))
    total = math.fsum(weighted)
    predicted = x ** (1.0 / g.degree) / math.log(x) if x >= 2 else 0.0
    return CensusRecord(x, total, predicted, len(distinct) - predicted, len(distinct), mult)


def pair_census(g1: IntPolynomial, g2: IntPolynomial, x: int, *,
                table: Optional[LambdaTable] = None,
                auto_terms: int = AUTO_TERMS) -> CensusRecord:
    """sum_{n<=x} Lambda(|g1(v)|) Lambda(|g2(v)|) with v = floor(x/n).

    ``multiplicity_count`` counts n with both values prime;
    ``distinct_prime_count`` counts the distinct prime pairs.
    """
    if x < 1:
        raise DomainError("x must be >= 1")
    if g1.is_zero or g2.is_zero:
        raise DomainError("census of the zero polynomial")
    _abs_value(g1, x)
    _abs_value(g2, x)
    if table is None:
        table = _table_for([g1, g2], x)
    blocks = decompose(x)
    prime_pairs: Dict[int, Tuple[int, int]] = {}

    def w(v: int) -> float:
        a, b = _abs_value(g1, v), _abs_value(g2, v)
        fa = factor_lookup(a, table) if a else None
        fb = factor_lookup(b, table) if b else None
        if not (fa and fb):
            return 0.0
        if fa[1] == 1 and fb[1] == 1:
            prime_pairs[v] = (a, b)
        return math.log(fa[0]) * math.log(fb[0])

    total = floor_weighted_sum(x, w, blocks)
    mult = sum(c for v, c in blocks if v in prime_pairs)
    predicted = _pair_density(g1, g2, min(auto_terms, x)) * x
    return CensusRecord(x, total, predicted, total - predicted,
                        len(set(prime_pairs.values())), mult)


def _prime_mask(limit: int) -> np.ndarray:
    mask = np.zeros(limit + 1, dtype=bool)
    mask[primes_up_to(limit)] = True
    return mask


def resolve_alpha(alpha: Union[str, float, int, Fraction]) -> Tuple[Fraction, Fraction]:
    """Exact value and uncertainty of a Beatty parameter.

    Decimal strings (and the presets sqrt2, pi, e) are read exactly with an
    uncertainty of one unit in the last digit; floats carry one ulp; ints and
    Fractions are exact.
    """
    if isinstance(alpha, str):
        text = ALPHA_PRESETS.get(alpha.lower(), alpha).strip()
        try:
            value = Fraction(text)
        except ValueError:
            raise DomainError(f"cannot read alpha {alpha!r}") from None
        digits = len(text.split(".", 1)[1]) if "." in text else 0
        eps = Fraction(1, 10**digits) if "." in text else Fraction(0)
        return value, eps
    if isinstance(alpha, float):
        return Fraction(alpha), Fraction(math.ulp(alpha))
    return Fraction(alpha), Fraction(0)


def beatty_primes(alpha, limit: int, first: Optional[int] = None) -> PrimeSequence:
    """Primes floor(alpha*n) <= limit, n = 1, 2, ...

    Indices whose floor would change under a perturbation of alpha within its
    stated uncertainty are listed in ``unstable``.
    """
    value, eps = resolve_alpha(alpha)
    if value <= 1:
        raise DomainError(f"Beatty parameter must exceed 1, got {float(value)}")
    if limit < 2:
        raise DomainError("limit must be >= 2")
    if eps == 0 or value.denominator <= RATIONAL_DENOMINATOR_CUTOFF:
        warnings.warn(f"alpha = {value} is rational; the Beatty density heuristic "
                      "does not apply", stacklevel=2)
    D = math.lcm(value.denominator, eps.denominator)
    A = value.numerator * (D // value.denominator)
    E = eps.numerator * (D // eps.denominator)
    mask = _prime_mask(limit)
    primes, indices, unstable = [], [], []
    n = 1
    while True:
        v = A * n // D
        if v > limit:
            break
        if E and (A - E) * n // D != (A + E) * n // D:
            unstable.append(n)
        if mask[v]:
            primes.append(v)
            indices.append(n)
            if first is not None and len(primes) >= first:
                break
        n += 1
    predicted = limit / (float(value) * math.log(limit))
    return PrimeSequence(tuple(primes), tuple(indices), limit, predicted, tuple(unstable))


def resolve_beta(beta) -> Fraction:
    """Exact rational exponent; floats are read through their shortest repr."""
    if isinstance(beta, float):
        return Fraction(repr(beta))
    return Fraction(beta)


def floor_rational_power(n: int, a: int, b: int) -> int:
    """floor(n**(a/b)) for n >= 0, exact: the largest v with v**b <= n**a."""
    target = n ** a
    try:
        v = int(float(n) ** (a / b))
    except OverflowError:
        return iroot(target, b)
    if v >= 1 << 50:
        # a float guess this large can be off by far more than one
        return iroot(target, b)
    while v ** b > target:
        v -= 1
    while (v + 1) ** b <= target:
        v += 1
    return v


def piatetski_shapiro_primes(beta, offset: int, limit: int) -> PrimeSequence:
    """Primes floor(n**beta) + offset <= limit."""
    exponent = resolve_beta(beta)
    if exponent < 1:
        raise DomainError(f"beta must be >= 1, got {beta}")
    if limit < 2:
        raise DomainError("limit must be >= 2")
    a, b = exponent.numerator, exponent.denominator
    mask = _prime_mask(limit)
    primes, indices = [], []
    n = 1
    while True:
        v = floor_rational_power(n, a, b) + offset
        if v > limit:
            break
        if v >= 2 and mask[v]:
            primes.append(v)
            indices.append(n)
        n += 1
    predicted = limit ** (1.0 / float(exponent)) / math.log(limit)
    return PrimeSequence(tuple(primes), tuple(indices), limit, predicted)


def gaussian_twin_pairs(limit: int) -> List[GaussianTwinPair]:
    """Conjugate Gaussian primes n -/+ i over each prime p = n^2 + 1 <= limit."""
    if limit < 2:
        raise DomainError("limit must be >= 2")
    out = []
    n = 1
    while n * n + 1 <= limit:
        p = n * n + 1
        if is_prime(p):
            if n >= 2 and p % 4 != 1:
                raise AssertionError(f"prime {p} = {n}^2 + 1 is not 1 mod 4")
            out.append(GaussianTwinPair(n, p, ((n, -1), (n, 1))))
        n += 1
    return out


@dataclass(frozen=True)
class ExponentPoint:
    x: int
    weighted_sum: float
    predicted: float
    residual: float
    ratio: float  # residual / (x^(2/3) log^2 x)


@dataclass(frozen=True)
class ExponentReport:
    slope: float
    intercept: float
    points: Tuple[ExponentPoint, ...]


def error_exponent_report(g: IntPolynomial, x_grid: Sequence[int]) -> ExponentReport:
    """Least-squares slope of log|S(x) - density*x| against log x.

    Makes no pass/fail judgement of its own.
    """
    grid = list(x_grid)
    if len(grid) < 3:
        raise DomainError("need at least 3 grid points")
    if grid != sorted(grid):
        raise DomainError("grid must be ascending")
    if g.is_zero:
        raise DomainError("zero polynomial has density 0; nothing to fit")
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        records = list(pool.map(lambda x: weighted_census(g, x), grid))
    if any(r.predicted == 0 for r in records):
        raise DomainError(f"density of {g} is 0; residual exponent is meaningless")
    points = tuple(
        ExponentPoint(r.x, r.weighted_sum, r.predicted, r.residual,
                      r.residual / (r.x ** (2 / 3) * math.log(r.x) ** 2))
        for r in records)
    xs = np.log([p.x for p in points])
    ys = np.log([abs(p.residual) for p in points])
    slope, intercept = np.polyfit(xs, ys, 1)
    return ExponentReport(float(slope), float(intercept), points)


@dataclass(frozen=True)
class InterleavingReport:
    x: int
    pi: int
    pi2: int
    pi3: int

    @property
    def chain_holds(self) -> bool:
        return self.pi >= self.pi2 >= self.pi3


def interleaving_report(x: int) -> InterleavingReport:
    """pi(x), pi_2(x) (primes [x/n]^2+1) and pi_3(x) (primes [x/n]^3+2)."""
    if x < 10:
        raise DomainError("interleaving report needs x >= 10")
    pi = int(primes_up_to(x).size)
    pi2 = fractional_prime_count(IntPolynomial((1, 0, 1)), x).distinct_prime_count
    pi3 = fractional_prime_count(IntPolynomial((2, 0, 0, 1)), x).distinct_prime_count
    return InterleavingReport(x, pi, pi2, pi3)


@dataclass(frozen=True)
class LinkingReport:
    x: int
    direct: float      # sum_{n<=x} Lambda(n^2+1)
    fractional: float  # sum_{n<=x} Lambda([x/n]^2+1)

    @property
    def ratio(self) -> float:
        return self.direct / self.fractional


def linking_ratio(x: int) -> LinkingReport:
    """Empirical ratio between the direct and fractional n^2+1 sums.

    Exploratory: nothing is claimed about convergence in x.
    """
    g = IntPolynomial((1, 0, 1))
    table = _table_for([g], x)
    direct = math.fsum(math.log(f[0]) for n in range(1, x + 1)
                       if (f := factor_lookup(n * n + 1, table)))
    return LinkingReport(x, direct, weighted_census(g, x).weighted_sum)

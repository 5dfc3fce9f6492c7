"""Density-constant series, their tail bounds, and Euler-product constants.

Two knobs go beyond the plain series sum_{n<=N} Lambda(|g(n)|)/(n(n+1)):

``weight``
    ``"lambda"`` (default) is the von Mangoldt function. ``"theta"`` keeps
    log p only at primes and drops higher prime powers.
``count``
    ``"index"`` (default) sums n = 1..N. ``"hits"`` keeps going until N
    nonzero terms have been collected.

``weight="theta", count="hits"`` is how the published value of c0
(0.755365841685897442410689) was computed: it is the sum over the first
100000 primes p of log p / (p(p-1)).
"""
from __future__ import annotations

import math
from contextlib import nullcontext
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
from scipy import integrate

from .arith import LambdaTable, build_lambda_table, factor_lookup, primes_up_to
from .errors import DomainError
from .poly import IntPolynomial, evaluate

Precision = Union[str, int]
WEIGHTS = ("lambda", "theta")
COUNTS = ("index", "hits")

TABLE_CAP = 4 * 10**6
MAX_INDEX = 10**8
GUARD_DIGITS = 10


@dataclass(frozen=True)
class DensityEstimate:
    partial_sum: Union[float, mpmath.mpf]
    terms: int
    tail_bound: float
    kind: str
    is_lower_bound: bool = True
    last_index: int = 0
    precision: Precision = "double"

    @property
    def upper_bound(self) -> float:
        return float(self.partial_sum) + self.tail_bound

    def value_str(self, digits: Optional[int] = None) -> str:
        if isinstance(self.partial_sum, mpmath.mpf):
            return mpmath.nstr(self.partial_sum, digits or int(self.precision), strip_zeros=False)
        return repr(self.partial_sum)


@dataclass(frozen=True)
class EulerProductEstimate:
    value: float
    prime_limit: int
    kind: str
    correction: Fraction = field(default=Fraction(1))


def parse_precision(text: Precision) -> Precision:
    """``"double"`` or ``"extended:<digits>"`` (or a bare digit count)."""
    if isinstance(text, int):
        digits = text
    elif text == "double":
        return "double"
    elif text.startswith("extended:"):
        digits = int(text.split(":", 1)[1])
    else:
        digits = int(text)
    if digits < 15:
        raise DomainError("extended precision needs at least 15 digits")
    return digits


@lru_cache(maxsize=4)
def shared_table(limit: int) -> LambdaTable:
    return build_lambda_table(limit)


def _value_fn(g: IntPolynomial) -> Callable[[int], int]:
    def value(n: int) -> int:
        try:
            return abs(evaluate(g, n, max_bits=63))
        except OverflowError:
            raise OverflowError(f"|{g}| at n={n} exceeds the 63-bit range of the "
                                "Lambda evaluator") from None
    return value


def _auto_table(polys: Sequence[IntPolynomial], N: int, count: str) -> Optional[LambdaTable]:
    if count == "hits":
        if all(g.degree <= 1 for g in polys):
            return shared_table(TABLE_CAP)
        return None
    bound = 2
    for g in polys:
        for n in (1, N):
            try:
                bound = max(bound, abs(evaluate(g, n)))
            except OverflowError:
                pass
    return shared_table(min(bound, TABLE_CAP))


def _series(polys: Sequence[IntPolynomial], N: int, *, precision: Precision,
            weight: str, count: str, table: Optional[LambdaTable],
            max_index: int) -> Tuple[Union[float, mpmath.mpf], int]:
    if N < 1:
        raise DomainError("number of terms must be >= 1")
    if weight not in WEIGHTS:
        raise DomainError(f"unknown weight {weight!r}; choose from {WEIGHTS}")
    if count not in COUNTS:
        raise DomainError(f"unknown count mode {count!r}; choose from {COUNTS}")
    for g in polys:
        if g.is_zero:
            raise DomainError("density series of the zero polynomial")
    precision = parse_precision(precision)
    if table is None:
        table = _auto_table(polys, N, count)
    values = [_value_fn(g) for g in polys]

    extended = precision != "double"
    log = mpmath.log if extended else math.log
    ctx = mpmath.workdps(precision + GUARD_DIGITS) if extended else nullcontext()
    logs: dict = {}
    terms = []
    n = 0
    with ctx:
        while True:
            n += 1
            if count == "index" and n > N:
                break
            if n > max_index:
                raise DomainError(f"only {len(terms)} of {N} nonzero terms found "
                                  f"for n <= {max_index}")
            num = None
            for value in values:
                m = value(n)
                fac = factor_lookup(m, table) if m else None
                if fac is None or (weight == "theta" and fac[1] > 1):
                    num = None
                    break
                lp = logs.get(fac[0])
                if lp is None:
                    lp = logs[fac[0]] = log(fac[0])
                num = lp if num is None else num * lp
            if num is None:
                continue
            terms.append(num / (n * (n + 1)))
            if count == "hits" and len(terms) == N:
                break
        total = mpmath.fsum(terms) if extended else math.fsum(terms)
    return total, (n if count == "hits" else N)


def _describe(polys, weight, count) -> str:
    name = "Lambda" if weight == "lambda" else "theta"
    prod = "*".join(f"{name}(|{g}|)" for g in polys)
    return f"sum {prod}/(n(n+1)) [{count}]"


def density_series(g: IntPolynomial, N: int, *, precision: Precision = "double",
                   weight: str = "lambda", count: str = "index",
                   tail: bool = False, table: Optional[LambdaTable] = None,
                   max_index: int = MAX_INDEX) -> DensityEstimate:
    """Partial sum of sum_{n>=1} Lambda(|g(n)|)/(n(n+1)).

    All terms are nonnegative, so the result is a lower bound for the full
    series. With ``tail=True`` an upper bound for the neglected tail is
    attached (index mode only).
    """
    total, last = _series([g], N, precision=precision, weight=weight, count=count,
                          table=table, max_index=max_index)
    tb = tail_bound_for([g], last) if tail else 0.0
    return DensityEstimate(total, N, tb, _describe([g], weight, count),
                           last_index=last, precision=parse_precision(precision))


def density_series_pair(g1: IntPolynomial, g2: IntPolynomial, N: int, *,
                        precision: Precision = "double", weight: str = "lambda",
                        count: str = "index", tail: bool = False,
                        table: Optional[LambdaTable] = None,
                        max_index: int = MAX_INDEX) -> DensityEstimate:
    """Partial sum of sum_{n>=1} Lambda(|g1(n)|) Lambda(|g2(n)|)/(n(n+1))."""
    total, last = _series([g1, g2], N, precision=precision, weight=weight, count=count,
                          table=table, max_index=max_index)
    tb = tail_bound_for([g1, g2], last) if tail else 0.0
    return DensityEstimate(total, N, tb, _describe([g1, g2], weight, count),
                           last_index=last, precision=parse_precision(precision))


def _tail_integral(factors: Sequence[Tuple[float, float]], N: int) -> float:
    if N < 2:
        raise DomainError("tail bound needs N >= 2")

    logN = math.log(N)

    # t = N/s maps [N, inf) onto (0, 1]; dt/(t(t+1)) becomes ds/(N+s).
    def integrand(s):
        num = 1.0
        for d, c in factors:
            num *= d * (logN - math.log(s)) + c
        return num / (N + s)

    value, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    return value


def tail_bound(d: int, N: int, const: float = 0.0) -> float:
    """Integral from N to infinity of (d log t + const)/(t(t+1)).

    Bounds sum_{n>N} Lambda(|g(n)|)/(n(n+1)) whenever log|g(t)| <= d log t + const
    and the integrand decreases on [N, inf). ``tail_bound(1, N)`` is the
    integrand log t/(t(t+1)) used for the quadratic density estimate.
    """
    return _tail_integral([(d, const)], N)


def tail_bound_for(polys: Sequence[IntPolynomial], N: int) -> float:
    """Tail bound using |g(t)| <= height_sum(g) * t**deg(g) for t >= 1."""
    return _tail_integral([(g.degree, math.log(g.height_sum())) for g in polys], N)


def _odd_primes(P: int) -> np.ndarray:
    return primes_up_to(P)[1:].astype(np.float64)


def _product(log_factors: np.ndarray) -> float:
    return math.exp(math.fsum(log_factors.tolist()))


def polignac_correction(m: int) -> Fraction:
    """prod over odd primes p | m of (p-1)/(p-2)."""
    if m < 1:
        raise DomainError("Polignac gap parameter m must be >= 1")
    corr = Fraction(1)
    r = m
    while r % 2 == 0:
        r //= 2
    p = 3
    while p * p <= r:
        if r % p == 0:
            corr *= Fraction(p - 1, p - 2)
            while r % p == 0:
                r //= p
        p += 2
    if r > 1:
        corr *= Fraction(r - 1, r - 2)
    return corr


def euler_product(kind: str, prime_limit: int, m: Optional[int] = None) -> EulerProductEstimate:
    """Truncated Euler products over odd primes p <= prime_limit.

    kind ``"twin"``: prod (1 - 1/(p-1)^2), the twin-prime constant.
    kind ``"hl2"``: prod (1 - chi(p)/(p-1)) with chi the nontrivial character
    mod 4, the Hardy-Littlewood constant for n^2 + 1. Converges only
    conditionally; truncation error oscillates.
    kind ``"polignac"`` (or ``"polignac:<m>"``): twin product times
    prod_{p | m, p > 2} (p-1)/(p-2).
    """
    if prime_limit < 3:
        raise DomainError("prime limit must be >= 3")
    if kind.startswith("polignac:"):
        kind, m = "polignac", int(kind.split(":", 1)[1])
    p = _odd_primes(prime_limit)
    if kind == "twin":
        return EulerProductEstimate(_product(np.log1p(-1.0 / (p - 1.0) ** 2)), prime_limit, "twin")
    if kind in ("hl2", "hardy_littlewood_quadratic"):
        chi = np.where(p % 4 == 1, 1.0, -1.0)
        return EulerProductEstimate(_product(np.log1p(-chi / (p - 1.0))), prime_limit, "hl2")
    if kind == "polignac":
        if m is None:
            raise DomainError("polignac needs the gap parameter m")
        corr = polignac_correction(m)
        twin = euler_product("twin", prime_limit)
        value = twin.value if corr == 1 else twin.value * (corr.numerator / corr.denominator)
        return EulerProductEstimate(value, prime_limit, f"polignac:{m}", corr)
    raise DomainError(f"unknown Euler product kind {kind!r}")

"""Exact integer polynomials and their fixed divisors.

Coefficients are always ascending: ``IntPolynomial((1, 0, 1))`` is x^2 + 1.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Tuple

from .errors import DomainError


class FixedDivisorWarning(UserWarning):
    pass


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: Tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return -1 if self.is_zero else len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, n: int) -> int:
        return evaluate(self, n)

    def height_sum(self) -> int:
        """Sum of absolute coefficients, so |f(t)| <= height_sum * t**d for t >= 1."""
        return sum(abs(c) for c in self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_cli(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def parse_poly(text: str) -> IntPolynomial:
    """Parse comma-separated ascending coefficients, e.g. ``"1,0,1"`` -> x^2 + 1."""
    try:
        cs = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise DomainError(f"bad polynomial coefficient list: {text!r}") from None
    if not cs:
        raise DomainError("empty polynomial coefficient list")
    return IntPolynomial(cs)


def evaluate(f: IntPolynomial, n: int, max_bits: Optional[int] = None) -> int:
    """Horner evaluation in exact integers.

    With ``max_bits`` set, a result whose magnitude needs more bits raises
    OverflowError instead of being returned.
    """
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * n + c
    if max_bits is not None and abs(acc).bit_length() > max_bits:
        raise OverflowError(f"{f}({n}) = {acc} exceeds {max_bits} bits")
    return acc


def _require_nonzero(f: IntPolynomial) -> None:
    if f.is_zero:
        raise DomainError("fixed divisor of the zero polynomial is undefined")


def fixed_divisor_truncated(f: IntPolynomial) -> int:
    """gcd of f(0), ..., f(deg f)."""
    _require_nonzero(f)
    return reduce(math.gcd, (abs(evaluate(f, n)) for n in range(f.degree + 1)), 0)


@dataclass(frozen=True)
class FactorialBasis:
    """Coefficients b_k with f(x) = sum_k b_k * C(x, k)."""

    b: Tuple[int, ...]

    def to_power_basis(self) -> IntPolynomial:
        acc = [Fraction(0)] * len(self.b)
        falling = [Fraction(1)]  # x(x-1)...(x-k+1), ascending coefficients
        for k, bk in enumerate(self.b):
            if k:
                shifted = [Fraction(0)] + falling
                for i, c in enumerate(falling):
                    shifted[i] -= (k - 1) * c
                falling = shifted
            scale = Fraction(bk, math.factorial(k))
            for i, c in enumerate(falling):
                acc[i] += scale * c
        if any(c.denominator != 1 for c in acc):
            raise DomainError(f"{self.b} does not describe an integer-coefficient polynomial")
        return IntPolynomial(int(c) for c in acc)

    def evaluate(self, n: int) -> int:
        return sum(bk * math.comb(n, k) if n >= 0 else bk * _binom_signed(n, k)
                   for k, bk in enumerate(self.b))


def _binom_signed(n: int, k: int) -> int:
    # C(n, k) for negative n: (-1)^k C(k - n - 1, k)
    return (-1) ** k * math.comb(k - n - 1, k)


def to_factorial_basis(f: IntPolynomial) -> FactorialBasis:
    """b_k is the k-th forward difference of f at 0."""
    _require_nonzero(f)
    row = [evaluate(f, n) for n in range(f.degree + 1)]
    b = []
    while row:
        b.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return FactorialBasis(tuple(b))


def fixed_divisor_factorial(f: IntPolynomial) -> int:
    """gcd of the factorial-basis coefficients b_0, ..., b_d."""
    return reduce(math.gcd, (abs(bk) for bk in to_factorial_basis(f).b), 0)


def check_admissible(f: IntPolynomial) -> int:
    """Return div(f), warning when it exceeds 1.

    Such a polynomial represents at most one prime. Irreducibility is not
    checked.
    """
    d = fixed_divisor_truncated(f)
    if d > 1:
        warnings.warn(f"{f} has fixed divisor {d}; it takes at most one prime value",
                      FixedDivisorWarning, stacklevel=2)
    return d

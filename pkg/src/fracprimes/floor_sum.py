"""Block decomposition of n -> floor(x/n) and sums over it.

Only O(sqrt x) distinct quotients occur, so a sum over n <= x of w(floor(x/n))
needs just one weight evaluation per block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Tuple

import mpmath

from .errors import DomainError

BRUTEFORCE_LIMIT = 10**7


class WeightError(RuntimeError):
    """A weight function failed; carries the offending block."""

    def __init__(self, value: int, count: int, cause: BaseException):
        super().__init__(f"weight failed at block value={value} (count={count}): {cause!r}")
        self.value = value
        self.count = count


@dataclass(frozen=True)
class BlockDecomposition:
    x: int
    blocks: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.blocks)

    def intervals(self) -> Iterator[Tuple[int, int, int]]:
        """Yield ``(v, lo, hi)``: floor(x/n) == v exactly for lo <= n <= hi."""
        x = self.x
        for v, _ in self.blocks:
            yield v, x // (v + 1) + 1, x // v


def decompose(x: int) -> BlockDecomposition:
    """Two-phase decomposition: n <= sqrt(x) directly, then small values v."""
    if x < 1:
        raise DomainError("decompose needs x >= 1")
    s = math.isqrt(x)
    blocks = []
    for n in range(1, s + 1):
        v = x // n
        blocks.append((v, x // v - x // (v + 1)))
    for v in range(x // (s + 1), 0, -1):
        if blocks and blocks[-1][0] == v:
            continue
        blocks.append((v, x // v - x // (v + 1)))
    return BlockDecomposition(x, tuple(blocks))


def _accumulate(terms: list):
    if all(isinstance(t, int) for t in terms):
        return sum(terms)
    if any(isinstance(t, mpmath.mpf) for t in terms):
        return mpmath.fsum(terms)
    return math.fsum(terms)


def floor_weighted_sum(x: int, w: Callable[[int], float],
                       blocks: BlockDecomposition | None = None):
    """Sum over n <= x of w(floor(x/n)), one call of w per block.

    Integer weights give an exact int; floats are summed with math.fsum
    (correctly rounded, hence independent of order); mpmath values with
    mpmath.fsum.
    """
    if blocks is None:
        blocks = decompose(x)
    elif blocks.x != x:
        raise DomainError(f"decomposition is for x={blocks.x}, not {x}")
    terms = []
    for v, c in blocks.blocks:
        try:
            wv = w(v)
        except Exception as exc:
            raise WeightError(v, c, exc) from exc
        terms.append(c * wv)
    return _accumulate(terms)


def floor_weighted_sum_bruteforce(x: int, w: Callable[[int], float], *,
                                  allow_large: bool = False):
    """Literal loop over n = 1..x. Test oracle only."""
    if x < 1:
        raise DomainError("x must be >= 1")
    if x > BRUTEFORCE_LIMIT and not allow_large:
        raise DomainError(f"x={x} above brute-force guard {BRUTEFORCE_LIMIT}; "
                          "pass allow_large=True to override")
    return _accumulate([w(x // n) for n in range(1, x + 1)])

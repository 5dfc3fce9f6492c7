import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from fracprimes.arith import lambda_of
from fracprimes.errors import DomainError
from fracprimes.floor_sum import (WeightError, decompose, floor_weighted_sum,
                                  floor_weighted_sum_bruteforce)

WEIGHTS = {
    "one": lambda v: 1,
    "v": lambda v: v,
    "v^2": lambda v: v * v,
    "Lambda(v+1)": lambda v: lambda_of(v + 1),
    "Lambda(v^2+1)": lambda v: lambda_of(v * v + 1),
}


def test_decompose_one():
    assert decompose(1).blocks == ((1, 1),)


def test_decompose_ten():
    # [10/n] for n = 1..10 is 10,5,3,2,2,1,1,1,1,1
    assert decompose(10).blocks == ((10, 1), (5, 1), (3, 1), (2, 2), (1, 5))
    assert [10 // n for n in range(1, 11)] == [10, 5, 3, 2, 2, 1, 1, 1, 1, 1]


def test_decompose_million():
    bd = decompose(10**6)
    assert len(bd) <= 2001
    assert sum(c for _, c in bd) == 10**6


def test_decompose_zero():
    with pytest.raises(DomainError):
        decompose(0)


@settings(max_examples=300)
@given(st.integers(1, 10**7))
def test_block_invariants(x):
    bd = decompose(x)
    values = [v for v, _ in bd]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert sum(c for _, c in bd) == x
    assert len(bd) <= 2 * math.isqrt(x) + 1
    expect = 1
    for (v, lo, hi), (_, c) in zip(bd.intervals(), bd.blocks):
        assert lo == expect and hi - lo + 1 == c
        assert x // lo == v == x // hi
        expect = hi + 1
    assert expect == x + 1


@pytest.mark.parametrize("x", [1, 2, 3, 10, 99, 100, 101, 1000])
def test_constant_weight_counts_x(x):
    assert floor_weighted_sum(x, lambda v: 1) == x


def test_identity_weight_at_ten():
    assert floor_weighted_sum(10, lambda v: v) == 27
    assert floor_weighted_sum_bruteforce(10, lambda v: v) == 27


def test_bruteforce_single_term():
    assert floor_weighted_sum_bruteforce(1, lambda v: 3.5) == 3.5


def test_squares_at_hundred_exact():
    w = lambda v: v * v
    assert floor_weighted_sum(100, w) == floor_weighted_sum_bruteforce(100, w)


def test_lambda_shift_at_thousand():
    w = WEIGHTS["Lambda(v+1)"]
    assert floor_weighted_sum(1000, w) == pytest.approx(floor_weighted_sum_bruteforce(1000, w),
                                                        rel=1e-12)


@pytest.mark.parametrize("name", list(WEIGHTS))
def test_oracle_equivalence_small(name):
    w = WEIGHTS[name]
    for x in range(1, 400):
        a, b = floor_weighted_sum(x, w), floor_weighted_sum_bruteforce(x, w)
        if isinstance(a, int):
            assert a == b
        else:
            assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_oracle_equivalence_random_large():
    rng = random.Random(3)
    names = list(WEIGHTS)
    for i in range(10):
        x = rng.randint(10**4, 2 * 10**5)
        w = WEIGHTS[names[i % len(names)]]
        assert floor_weighted_sum(x, w) == pytest.approx(floor_weighted_sum_bruteforce(x, w),
                                                         rel=1e-12)


def test_weight_called_once_per_block():
    calls = []

    def w(v):
        calls.append(v)
        return v

    floor_weighted_sum(10**5, w)
    assert len(calls) == len(set(calls)) == len(decompose(10**5))


def test_weight_error_carries_block():
    def w(v):
        if v == 3:
            raise ZeroDivisionError("boom")
        return 1

    with pytest.raises(WeightError) as info:
        floor_weighted_sum(10, w)
    assert info.value.value == 3 and info.value.count == 1
    assert isinstance(info.value.__cause__, ZeroDivisionError)


def test_bruteforce_guard():
    with pytest.raises(DomainError, match="allow_large"):
        floor_weighted_sum_bruteforce(10**7 + 1, lambda v: 1)


def test_real_sum_is_order_independent():
    # fsum is correctly rounded, so any block order gives the same bits.
    x = 54321
    bd = decompose(x)
    w = WEIGHTS["Lambda(v+1)"]
    terms = [c * w(v) for v, c in bd]
    assert math.fsum(reversed(terms)) == floor_weighted_sum(x, w)

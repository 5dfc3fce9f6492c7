import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracprimes.arith import (build_lambda_table, iroot, is_prime, lambda_of, prime_power,
                              primes_up_to)
from fracprimes.errors import DomainError

from oracles import bytearray_sieve, trial_lambda, trial_prime, trial_prime_power


@pytest.fixture(scope="module")
def table():
    return build_lambda_table(10**5)


def test_table_small_values():
    t = build_lambda_table(12)
    assert t[1] is None
    assert t[2] == (2, 1)
    assert t[9] == (3, 2)
    assert t[12] is None
    assert t.log_value(2) == math.log(2)
    assert t.log_value(9) == math.log(3)


def test_limit_one():
    t = build_lambda_table(1)
    assert t[1] is None
    with pytest.raises(IndexError):
        t[2]


def test_limit_zero_rejected():
    with pytest.raises(DomainError):
        build_lambda_table(0)


def test_table_is_read_only(table):
    with pytest.raises(ValueError):
        table.base[5] = 0


def test_psi_against_trial_division(table):
    # Chebyshev psi(1e5) by an independent prime-power scan.
    brute = math.fsum(trial_lambda(n) for n in range(1, 10**5 + 1))
    assert table.psi() == pytest.approx(brute, rel=1e-12)
    assert 0.9e5 <= table.psi() <= 1.1e5


def test_table_matches_trial_division(table):
    for n in range(1, 10**4 + 1):
        assert table[n] == trial_prime_power(n), n


def test_table_invariants(table):
    base, exp = table.base, table.exponent
    idx = np.flatnonzero(base)
    for n in idx[:5000]:
        assert int(base[n]) ** int(exp[n]) == n
    primes_in_table = np.flatnonzero((base > 0) & (exp == 1))
    assert np.array_equal(primes_in_table, primes_up_to(10**5))


def test_lambda_of_matches_table(table):
    for n in range(1, 10**4 + 1):
        assert lambda_of(n) == table.log_value(n)


@pytest.mark.parametrize("n, expected", [
    (1, 0.0),
    (10**6 + 3, math.log(10**6 + 3)),
    (2**60, math.log(2)),
    (3**39, math.log(3)),
    (10**6, 0.0),
    ((2**31 - 1) ** 2, math.log(2**31 - 1)),
    (1000003 * 1000033, 0.0),
])
def test_lambda_of_examples(n, expected):
    assert lambda_of(n) == expected


def test_million_and_three_is_prime_by_trial_division():
    assert trial_prime(10**6 + 3)


def test_lambda_of_domain():
    with pytest.raises(DomainError):
        lambda_of(0)
    with pytest.raises(OverflowError):
        lambda_of(2**63)


def test_chebyshev_identity():
    # sum_{d | n} Lambda(d) = log n
    for n in range(1, 10**4 + 1):
        divs = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
        divs += [n // d for d in divs if d * d != n]
        assert math.fsum(lambda_of(d) for d in divs) == pytest.approx(math.log(n), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10**6), st.integers(2, 10**6))
def test_lambda_of_product_with_common_factor(a, b):
    pa, pb = prime_power(a), prime_power(b)
    if math.gcd(a, b) > 1 and not (pa and pb and pa[0] == pb[0]):
        assert lambda_of(a * b) == 0.0


def test_primes_up_to_small():
    assert primes_up_to(10).tolist() == [2, 3, 5, 7]
    assert len(primes_up_to(100)) == 25 == sum(trial_prime(n) for n in range(101))


def test_prime_count_million_two_sieves():
    ours = primes_up_to(10**6)
    assert len(ours) == 78498
    assert ours.tolist() == bytearray_sieve(10**6)
    assert ours[ours <= 10**5].tolist() == [n for n in range(10**5 + 1) if trial_prime(n)]


# Strong pseudoprimes to several small bases; a fixed-base test must reject them.
@pytest.mark.parametrize("n", [2047, 1373653, 25326001, 3215031751, 2152302898747,
                               3474749660383, 341550071728321, 3825123056546413051])
def test_strong_pseudoprimes_rejected(n):
    assert not is_prime(n)


@pytest.mark.parametrize("p", [2, 3, 97, 101, 10**9 + 7, 2**61 - 1, 9223372036854775783])
def test_known_primes(p):
    assert is_prime(p)


def test_is_prime_against_trial_division():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(2, 10**9)
        assert is_prime(n) == trial_prime(n), n


@settings(max_examples=300)
@given(st.integers(0, 10**40), st.integers(1, 70))
def test_iroot_is_floor_root(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 101, 65537, 1000003]), st.integers(1, 40))
def test_prime_power_detection(p, m):
    n = p ** m
    if n < 2**63:
        assert prime_power(n) == (p, m)

import math
import random
import warnings
from fractions import Fraction
from functools import lru_cache

import mpmath
import pytest

from fracprimes.census import (beatty_primes, error_exponent_report, floor_rational_power,
                               fractional_prime_count, gaussian_twin_pairs,
                               interleaving_report, linking_ratio, pair_census,
                               piatetski_shapiro_primes, resolve_alpha, weighted_census)
from fracprimes.errors import DomainError
from fracprimes.poly import IntPolynomial, parse_poly

from oracles import trial_lambda, trial_prime

X = parse_poly("0,1")
X_PLUS_1 = parse_poly("1,1")
X_PLUS_2 = parse_poly("2,1")
TWO_X_PLUS_1 = parse_poly("1,2")
QUAD = parse_poly("1,0,1")
CUBIC = parse_poly("2,0,0,1")

lam = lru_cache(maxsize=None)(trial_lambda)
prime = lru_cache(maxsize=None)(trial_prime)


def close(a, b):
    return abs(a - b) <= 1e-12 * max(1.0, abs(b))


def brute_weighted(g, x):
    return math.fsum(lam(abs(g(x // n))) for n in range(1, x + 1))


def brute_pair(g1, g2, x):
    total, mult, pairs = [], 0, set()
    for n in range(1, x + 1):
        a, b = abs(g1(x // n)), abs(g2(x // n))
        total.append(lam(a) * lam(b))
        if prime(a) and prime(b):
            mult += 1
            pairs.add((a, b))
    return math.fsum(total), mult, len(pairs)


def brute_fractional(g, x):
    hits = [abs(g(x // n)) for n in range(1, x + 1)]
    hits = [p for p in hits if p <= x and prime(p)]
    return set(hits), len(hits)


# weighted_census

def test_weighted_census_hand_example():
    r = weighted_census(X_PLUS_1, 10)
    # blocks (10,1),(5,1),(3,1),(2,2),(1,5); Lambda(6) = 0
    want = math.log(11) + math.log(2) + 2 * math.log(3) + 5 * math.log(2)
    assert r.weighted_sum == pytest.approx(want, rel=1e-15)
    assert r.residual == r.weighted_sum - r.predicted
    assert r.distinct_prime_count <= r.multiplicity_count


def test_weighted_census_predicted_uses_auto_terms():
    from fracprimes.density import density_series
    r = weighted_census(X_PLUS_1, 500)
    assert r.predicted == density_series(X_PLUS_1, 500).partial_sum * 500


def test_block_brute_equivalence_small():
    for x in range(1, 2001):
        for g in (X_PLUS_1, QUAD):
            assert close(weighted_census(g, x).weighted_sum, brute_weighted(g, x)), (g, x)
        total, mult, distinct = brute_pair(X, X_PLUS_2, x)
        r = pair_census(X, X_PLUS_2, x)
        assert close(r.weighted_sum, total) and r.multiplicity_count == mult, x
        assert r.distinct_prime_count == distinct


def test_block_brute_equivalence_random():
    rng = random.Random(11)
    for _ in range(50):
        x = rng.randint(2001, 10**5)
        assert close(weighted_census(X_PLUS_1, x).weighted_sum, brute_weighted(X_PLUS_1, x)), x
        total, mult, _ = brute_pair(X, TWO_X_PLUS_1, x)
        r = pair_census(X, TWO_X_PLUS_1, x)
        assert close(r.weighted_sum, total) and r.multiplicity_count == mult, x


def test_linear_progression_census():
    # Lambda(q[x/n] + a) with (a, q) = (2, 3)
    g = parse_poly("2,3")
    for x in (10, 997, 5000):
        assert close(weighted_census(g, x).weighted_sum, brute_weighted(g, x))


def test_weighted_census_theta_drops_prime_powers():
    r_lam = weighted_census(X_PLUS_1, 10)
    r_th = weighted_census(X_PLUS_1, 10, weight="theta")
    # v = 3 gives 4 = 2^2, one n contributes log 2
    assert r_lam.weighted_sum - r_th.weighted_sum == pytest.approx(math.log(2), rel=1e-14)


def test_weighted_census_errors():
    with pytest.raises(DomainError):
        weighted_census(X_PLUS_1, 0)
    with pytest.raises(DomainError):
        weighted_census(IntPolynomial((0,)), 10)
    with pytest.raises(OverflowError, match="block value 1000"):
        weighted_census(parse_poly("1,0,0,0,0,0,0,0,0,0,1"), 10**3)
    with pytest.raises(OverflowError):
        pair_census(X, parse_poly("1,0,0,0,0,0,0,0,0,0,1"), 10**3)


@pytest.mark.slow
def test_census_band_literal():
    # Loose band around 0.7553658 at x = 1e6 with the Lambda weight.
    r = weighted_census(X_PLUS_1, 10**6)
    assert abs(r.weighted_sum / 10**6 - 0.7553658) <= 0.05


@pytest.mark.slow
def test_census_band_theta_convention():
    r = weighted_census(X_PLUS_1, 10**6, weight="theta")
    assert abs(r.weighted_sum / 10**6 - 0.7553658) <= 0.05


# fractional_prime_count

def test_pi2_hundred():
    r = fractional_prime_count(QUAD, 100)
    assert r.distinct_prime_count == 4
    assert brute_fractional(QUAD, 100)[0] == {2, 5, 17, 37}
    assert r.predicted == pytest.approx(10 / math.log(100))


def test_pi2_one():
    r = fractional_prime_count(QUAD, 1)
    assert r.distinct_prime_count == 0 == r.multiplicity_count


def test_pi3_thousand():
    r = fractional_prime_count(CUBIC, 1000)
    distinct, mult = brute_fractional(CUBIC, 1000)
    assert r.distinct_prime_count == len(distinct) and r.multiplicity_count == mult


def test_fractional_count_matches_brute():
    for x in list(range(1, 600)) + list(range(600, 10**4 + 1, 97)) + [10**4]:
        for g in (QUAD, CUBIC, X_PLUS_1):
            r = fractional_prime_count(g, x)
            distinct, mult = brute_fractional(g, x)
            assert (r.distinct_prime_count, r.multiplicity_count) == (len(distinct), mult), (g, x)


def test_fractional_count_needs_nonconstant():
    with pytest.raises(DomainError):
        fractional_prime_count(IntPolynomial((5,)), 10)


# pair_census

def test_twin_pair_ten():
    assert pair_census(X, X_PLUS_2, 10).multiplicity_count == 2


def test_germain_pair_ten():
    assert pair_census(X, TWO_X_PLUS_1, 10).multiplicity_count == 4


def test_pair_census_x_one():
    assert pair_census(X, X_PLUS_2, 1).weighted_sum == 0.0


# Beatty

def beatty_oracle(alpha, limit):
    value, _ = resolve_alpha(alpha)
    out = []
    with mpmath.workdps(60):
        a = mpmath.mpf(value.numerator) / value.denominator
        n = 1
        while (v := int(mpmath.floor(a * n))) <= limit:
            if prime(v):
                out.append(v)
            n += 1
    return out


def test_beatty_sqrt2_first_three():
    assert beatty_primes("sqrt2", 100, first=3).primes == (2, 5, 7)


def test_beatty_pi_first():
    assert beatty_primes("pi", 100, first=1).primes == (3,)


@pytest.mark.parametrize("alpha", ["sqrt2", "pi", "e", "1.0000001"])
def test_beatty_matches_extended_precision(alpha):
    seq = beatty_primes(alpha, 5000)
    assert list(seq.primes) == beatty_oracle(alpha, 5000)


def test_beatty_presets_are_30_digits():
    value, eps = resolve_alpha("sqrt2")
    # 30 significant digits, so 29 after the point
    assert eps == Fraction(1, 10**29)
    with mpmath.workdps(50):
        assert abs(mpmath.mpf(value.numerator) / value.denominator - mpmath.sqrt(2)) < 1e-29


def test_beatty_rational_warns():
    with pytest.warns(UserWarning, match="rational"):
        seq = beatty_primes(2.0, 100)
    assert seq.primes == (2,)


def test_beatty_irrational_is_quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        beatty_primes("sqrt2", 100)


def test_beatty_unstable_flag():
    # alpha = 1.5 +/- 0.1: at n = 2 the floor may be 2 or 3.
    with pytest.warns(UserWarning):
        seq = beatty_primes("1.5", 20)
    assert 2 in seq.unstable


def test_beatty_float_alpha_stable():
    assert beatty_primes(math.sqrt(2), 1000).unstable == ()


def test_beatty_errors():
    with pytest.raises(DomainError):
        beatty_primes("0.9", 100)
    with pytest.raises(DomainError):
        beatty_primes("sqrt2", 1)


# Piatetski-Shapiro

def ps_oracle(beta, offset, limit):
    out = []
    with mpmath.workdps(60):
        b = mpmath.mpf(beta.numerator) / beta.denominator
        n = 1
        while (v := int(mpmath.floor(mpmath.mpf(n) ** b)) + offset) <= limit:
            if prime(v):
                out.append(v)
            n += 1
    return out


def test_ps_identity_exponent():
    seq = piatetski_shapiro_primes(1, 0, 200)
    assert list(seq.primes) == [p for p in range(201) if trial_prime(p)]


@pytest.mark.parametrize("beta, offset, limit", [(Fraction(12, 11), 0, 100),
                                                 (Fraction(105, 100), 1, 50),
                                                 (Fraction(12, 11), 1, 10**5)])
def test_ps_matches_brute(beta, offset, limit):
    assert list(piatetski_shapiro_primes(beta, offset, limit).primes) == \
        ps_oracle(beta, offset, limit)


def test_ps_float_beta_read_exactly():
    assert piatetski_shapiro_primes(1.05, 1, 50).primes == \
        piatetski_shapiro_primes(Fraction(21, 20), 1, 50).primes


def test_ps_errors():
    with pytest.raises(DomainError):
        piatetski_shapiro_primes(0.9, 0, 100)


def test_floor_rational_power_exact():
    rng = random.Random(5)
    for _ in range(500):
        n, a, b = rng.randint(0, 10**12), rng.randint(1, 13), rng.randint(1, 12)
        v = floor_rational_power(n, a, b)
        assert v ** b <= n ** a < (v + 1) ** b


# Gaussian twins

def test_gaussian_twins_two():
    (t,) = gaussian_twin_pairs(2)
    assert (t.n, t.p, t.pair) == (1, 2, ((1, -1), (1, 1)))


def test_gaussian_twins_fifty():
    assert [t.n for t in gaussian_twin_pairs(50)] == [1, 2, 4, 6]


def test_gaussian_twins_invariants():
    pairs = gaussian_twin_pairs(10**4)
    assert [t.n for t in pairs] == [n for n in range(1, 100) if trial_prime(n * n + 1)]
    for t in pairs:
        assert t.norms() == (t.p, t.p)
        assert t.difference() == (0, 2)


# Reports

def test_error_exponent_usage_errors():
    with pytest.raises(DomainError):
        error_exponent_report(X_PLUS_1, [100, 1000])
    with pytest.raises(DomainError):
        error_exponent_report(X_PLUS_1, [1000, 100, 10000])
    with pytest.raises(DomainError):
        error_exponent_report(IntPolynomial((0,)), [100, 1000, 10000])


def test_error_exponent_small_grid(monkeypatch):
    monkeypatch.setenv("FRACPRIMES_THREADS", "3")
    rep = error_exponent_report(QUAD, [1000, 3000, 10000])
    assert len(rep.points) == 3
    p = rep.points[0]
    assert p.ratio == pytest.approx(p.residual / (1000 ** (2 / 3) * math.log(1000) ** 2))
    assert math.isfinite(rep.slope)


def test_interleaving_hundred():
    rep = interleaving_report(100)
    assert (rep.pi, rep.pi2) == (25, 4)
    assert rep.pi3 == len(brute_fractional(CUBIC, 100)[0])
    assert rep.chain_holds


def test_interleaving_ten():
    rep = interleaving_report(10)
    assert rep.pi == 4
    with pytest.raises(DomainError):
        interleaving_report(9)


def test_linking_ratio_small():
    rep = linking_ratio(1000)
    direct = math.fsum(lam(n * n + 1) for n in range(1, 1001))
    assert rep.direct == pytest.approx(direct, rel=1e-12)
    assert rep.fractional == pytest.approx(brute_weighted(QUAD, 1000), rel=1e-12)

import math

import pytest

from errors.errors import ErrBadRequest
from utils.arith import (
    divisors,
    factorize,
    factorize_product,
    gcd,
    is_perfect_square,
    is_prime_power,
    p_valuation,
    prime_power,
    prime_powers_up_to,
)


def test_factorize_round_trips_value():
    for n in (1, 2, 97, 360, 2**61 - 1, 1051720694280527616):
        assert factorize(n).value == n


def test_factorize_product_matches_factorize():
    factors = [4**10, 4**5 + 1, 4**4 - 1, 4**3 + 1, 4**2 - 1]
    product = 1
    for f in factors:
        product *= f
    assert factorize_product(factors) == factorize(product)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(factorize(1440))[-1] == 1440
    assert len(divisors(1440)) == factorize(1440).divisor_count == 36


def test_perfect_square_and_valuation():
    assert is_perfect_square(0)
    assert is_perfect_square(4 * 18 * 39 + 1)
    assert not is_perfect_square(-4)
    assert not is_perfect_square(1407)
    assert p_valuation(2, 1408 - 1) == 0
    assert p_valuation(3, 1296) == 4


def test_prime_power():
    assert prime_power(64) == (2, 6)
    assert prime_power(9) == (3, 2)
    assert is_prime_power(49)
    assert not is_prime_power(12)
    with pytest.raises(ErrBadRequest):
        prime_power(1)
    with pytest.raises(ErrBadRequest):
        prime_power(6)


def test_prime_powers_up_to():
    assert prime_powers_up_to(16) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_gcd():
    assert gcd(5, 3) == 1
    assert gcd(5, 5) == 5
    assert gcd(5, 4 + 1) == 5
    assert gcd(0, 0) == 0


def test_divisors_match_trial_division():
    for n in range(1, 2001):
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0], n


def test_perfect_square_matches_isqrt():
    for n in range(-5, 5001):
        expected = n >= 0 and math.isqrt(n) ** 2 == n
        assert is_perfect_square(n) == expected, n

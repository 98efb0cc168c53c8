import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (FACTORIAL_COST_C, FACTOR_COST_C, GCD_COST_C, binomial_row, euclid,
                     iterative_factorial, smallest_prime_factor)
from realct.errors import PreconditionError
from realct.exactnum import bits
from realct.machine import CostMeter
from realct.realalgo import (central_binomial, extract_bits, factorial_fast, gcd_fast,
                             pow_by_squaring, shamir_factor)


@pytest.mark.parametrize("k, n, value", [(2, 10, 1024), (3, 0, 1), (3, 5, 243)])
def test_pow_examples(k, n, value):
    m = CostMeter()
    assert pow_by_squaring(k, n, m) == value
    assert m.real_ops <= 2 * bits(n) + 2


def test_pow_of_three_to_five_within_eight():
    m = CostMeter()
    pow_by_squaring(3, 5, m)
    assert m.real_ops <= 8


@given(st.integers(-50, 50), st.integers(0, 3000))
def test_pow_matches_builtin(k, n):
    m = CostMeter()
    assert pow_by_squaring(k, n, m) == k ** n
    assert m.real_ops <= 2 * bits(n) + 2


def test_pow_negative_exponent():
    with pytest.raises(PreconditionError):
        pow_by_squaring(2, -1, CostMeter())


@pytest.mark.parametrize("R, a, b, value", [(45, 1, 4, 6), (45, 0, 6, 45), ((2 ** 6 + 1) ** 6, 18, 24, 20)])
def test_extract_bits_examples(R, a, b, value):
    m = CostMeter()
    assert extract_bits(R, a, b, m) == value
    assert m.floor_ops > 0


@given(st.integers(0, 2 ** 200), st.integers(0, 150), st.integers(1, 60))
def test_extract_bits_matches_shifts(R, a, width):
    assert extract_bits(R, a, a + width, CostMeter()) == (R >> a) & ((1 << width) - 1)


def test_binomial_blocks_of_sixty_five_to_the_sixth():
    R = (2 ** 6 + 1) ** 6
    blocks = tuple(extract_bits(R, 6 * i, 6 * i + 6, CostMeter()) for i in range(7))
    assert blocks == (1, 6, 15, 20, 15, 6, 1) == binomial_row(6)


def test_central_binomial():
    assert central_binomial(3, CostMeter()) == 20
    assert [central_binomial(m, CostMeter()) for m in range(1, 12)] == \
        [binomial_row(2 * m)[m] for m in range(1, 12)]


@pytest.mark.parametrize("n, value", [(1, 1), (6, 720), (10, 3628800)])
def test_factorial_examples(n, value):
    assert factorial_fast(n, CostMeter()) == value


def test_factorial_up_to_64_with_quadratic_cost():
    for n in range(1, 65):
        m = CostMeter()
        assert factorial_fast(n, m) == iterative_factorial(n)
        assert m.real_ops + m.floor_ops <= FACTORIAL_COST_C * bits(n) ** 2


def test_factorial_cost_is_replayed_on_cache_hits():
    first, second = CostMeter(), CostMeter()
    factorial_fast(40, first)
    factorial_fast(40, second)
    assert str(first) == str(second) and first.total > 0


@pytest.mark.parametrize("a, b, g", [(12, 18, 6), (1, 999, 1), (128, 128, 128)])
def test_gcd_examples(a, b, g):
    assert gcd_fast(a, b, CostMeter()) == g


@settings(max_examples=500)
@given(st.integers(1, 2 ** 32 - 1), st.integers(1, 2 ** 32 - 1))
def test_gcd_matches_euclid(a, b):
    m = CostMeter()
    assert gcd_fast(a, b, m) == euclid(a, b)
    assert m.total <= GCD_COST_C * min(bits(a), bits(b))


def test_gcd_with_huge_partner():
    big = iterative_factorial(1000)
    assert gcd_fast(997 * 991, big, CostMeter()) == 997 * 991
    assert gcd_fast(1009, big, CostMeter()) == 1


def test_gcd_requires_positive():
    with pytest.raises(PreconditionError):
        gcd_fast(0, 5, CostMeter())


@pytest.mark.parametrize("n, expected", [(15, "3"), (4, "2"), (13, "prime")])
def test_factor_examples(n, expected):
    assert str(shamir_factor(n, CostMeter())) == expected


def test_factor_sample_against_trial_division():
    rng = random.Random(11)
    for n in [2, 3, 9, 25, 49, 91, 121, 143, 997, 1001] + rng.sample(range(4, 700), 40):
        m = CostMeter()
        got = shamir_factor(n, m)
        assert got.factor == smallest_prime_factor(n) or (n == 2 and got.is_prime)
        assert m.total <= FACTOR_COST_C * bits(n) ** 3


def test_factor_precondition():
    with pytest.raises(PreconditionError):
        shamir_factor(1, CostMeter())

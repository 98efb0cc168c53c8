"""Shamir's factoring on a real RAM with rounding, as metered host procedures.

Every helper charges the shared :class:`~realct.machine.CostMeter` one unit
per real RAM primitive it performs: ``real_ops`` for +, -, x, / and sign
tests on real registers, ``floor_ops`` for rounding, ``word_ops`` for
bookkeeping on word-sized integers (loop counters, exponents, bit positions).
Register contents are exact integers; gmpy2 carries the big ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpz

from .errors import PreconditionError
from .machine import CostMeter


def pow_by_squaring(k, n: int, meter: CostMeter):
    """``k**n`` via ``k^(2m) = (k^m)^2`` and ``k^(2m+1) = (k^m)^2 * k``.

    Charges at most ``2*bits(n) + 1`` real operations.  ``0**0`` is 1.
    """
    if n < 0:
        raise PreconditionError("exponent must be non-negative")
    if isinstance(k, Fraction) and k.denominator != 1:
        base = k
        one = Fraction(1)
    else:
        base = mpz(int(k))
        one = mpz(1)
    return _pow(base, int(n), meter, one)


def _pow(k, n, meter, one):
    if n == 0:
        meter.real_ops += 1  # load constant 1
        return one
    meter.word_ops += 1  # halve the exponent
    half = _pow(k, n >> 1, meter, one)
    r = half * half
    meter.real_ops += 1
    if n & 1:
        r = r * k
        meter.real_ops += 1
    return r


def _div_floor(x, y, meter):
    # one real division followed by one rounding
    meter.real_ops += 1
    meter.floor_ops += 1
    return x // y


def _floor_by_power_of_two(x, p, shift, meter):
    # p == 2**shift by construction, so the rounded quotient is a shift
    meter.real_ops += 1
    meter.floor_ops += 1
    return x >> shift


def extract_bits(R: int, a: int, b: int, meter: CostMeter) -> int:
    """Bits ``a .. b-1`` of ``R``, as ``R1 - floor(R1 / 2^(b-a)) * 2^(b-a)``
    with ``R1 = floor(R / 2^a)``."""
    if not 0 <= a < b:
        raise PreconditionError("need 0 <= a < b")
    R = mpz(R)
    pa = pow_by_squaring(2, a, meter)
    r1 = _floor_by_power_of_two(R, pa, a, meter)
    width = b - a
    meter.word_ops += 1
    pw = pow_by_squaring(2, width, meter)
    q = _floor_by_power_of_two(r1, pw, width, meter)
    s = r1 - q * pw
    meter.real_ops += 2
    return int(s)


def central_binomial(m: int, meter: CostMeter) -> int:
    """``binom(2m, m)`` read off the l-bit blocks of ``(2^l + 1)^(2m)``, l = 2m."""
    l = 2 * m
    meter.word_ops += 1
    base = pow_by_squaring(2, l, meter) + 1
    meter.real_ops += 1
    R = pow_by_squaring(base, 2 * m, meter)
    meter.word_ops += 2  # block boundaries l*m and l*(m+1)
    return extract_bits(R, l * m, l * (m + 1), meter)


@lru_cache(maxsize=None)
def _factorial_metered(n: int):
    meter = CostMeter()
    value = _factorial(n, meter)
    return value, (meter.word_ops, meter.real_ops, meter.floor_ops)


def _factorial(n, meter):
    meter.word_ops += 1  # parity / base-case test on n
    if n <= 1:
        meter.real_ops += 1
        return mpz(1)
    if n & 1:
        # n! = n * (n-1)!
        rest, cost = _factorial_metered(n - 1)
        meter.add(CostMeter(*cost))
        meter.real_ops += 2  # load n into a real register, multiply
        return rest * n
    m = n >> 1
    meter.word_ops += 1
    binom = central_binomial(m, meter)
    half, cost = _factorial_metered(m)
    meter.add(CostMeter(*cost))
    meter.real_ops += 2
    return binom * half * half


def factorial_fast(n: int, meter: CostMeter) -> int:
    """``n!`` in O(bits(n)^2) metered steps.

    Odd ``n`` uses ``n * (n-1)!``; even ``n = 2m`` uses
    ``binom(2m, m) * (m!)^2``.  Results are memoised together with their
    exact cost, so repeated calls charge the meter identically.
    """
    if n < 1:
        raise PreconditionError("factorial_fast needs n >= 1")
    value, cost = _factorial_metered(int(n))
    meter.add(CostMeter(*cost))
    return int(value)


def _is_odd(x, meter):
    # x - 2*floor(x/2) > 0
    h = _div_floor(x, 2, meter)
    meter.real_ops += 3  # multiply, subtract, sign test
    return x - 2 * h > 0


def gcd_fast(a: int, b: int, meter: CostMeter) -> int:
    """Greatest common divisor by remainder-then-parity shaving.

    One remainder step ``r = b - floor(b/a) * a`` shrinks the larger input
    to below the smaller; common factors of two are stripped and restored
    at the end; then each round halves the even number, or subtracts when
    both are odd.
    """
    if a < 1 or b < 1:
        raise PreconditionError("gcd_fast needs a, b >= 1")
    a, b = mpz(a), mpz(b)
    meter.real_ops += 1
    if a > b:
        a, b = b, a
    q = _div_floor(b, a, meter)
    r = b - q * a
    meter.real_ops += 2
    meter.real_ops += 1
    if r == 0:
        return int(a)
    b = r
    if a < b:
        a, b = b, a
    meter.real_ops += 1

    shift = 0
    while True:
        odd_a, odd_b = _is_odd(a, meter), _is_odd(b, meter)
        if odd_a or odd_b:
            break
        a, b = a >> 1, b >> 1
        meter.real_ops += 2
        shift += 1
        meter.word_ops += 1

    # invariant: a >= b >= 1, not both even
    while True:
        meter.real_ops += 3  # b == 0, b == 1, a == b
        if b == 0:
            g = a
            break
        if b == 1:
            g = mpz(1)
            break
        if a == b:
            g = a
            break
        if not odd_a:
            a = a >> 1
            meter.real_ops += 1
            odd_a = _is_odd(a, meter)
        elif not odd_b:
            b = b >> 1
            meter.real_ops += 1
            odd_b = _is_odd(b, meter)
        else:
            a = a - b
            meter.real_ops += 1
            odd_a = False
        meter.real_ops += 1
        if a < b:
            a, b = b, a
            odd_a, odd_b = odd_b, odd_a
    if shift:
        g = g * pow_by_squaring(2, shift, meter)
        meter.real_ops += 1
    return int(g)


@dataclass(frozen=True)
class FactorResult:
    factor: int | None  # smallest prime factor, None when n is prime

    @property
    def is_prime(self) -> bool:
        return self.factor is None

    def __str__(self):
        return "prime" if self.factor is None else str(self.factor)


def shamir_factor(n: int, meter: CostMeter) -> FactorResult:
    """Smallest ``k`` in ``[2, n-1]`` with ``gcd(n, k!) > 1``, by binary search.

    That ``k`` is the smallest prime factor of ``n``; if no such ``k``
    exists, ``n`` is prime.
    """
    if n < 2:
        raise PreconditionError("shamir_factor needs n >= 2")
    n = int(n)
    lo, hi = 2, n  # hi == n stands for "no factor found"
    while lo < hi:
        mid = (lo + hi) // 2
        meter.word_ops += 2
        g = gcd_fast(n, factorial_fast(mid, meter), meter)
        meter.real_ops += 1
        if g > 1:
            hi = mid
        else:
            lo = mid + 1
    return FactorResult(None if lo >= n else lo)

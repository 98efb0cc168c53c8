"""Exact integers and rationals.

Word registers hold plain Python ``int`` values (unbounded), real registers
hold :class:`fractions.Fraction` values, which are always kept in lowest
terms with a positive denominator.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import ParseError, ZeroDenominatorError

BigInt = int
Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([-−]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def normalize_rational(num: int, den: int) -> Fraction:
    """Return ``num/den`` in canonical form (reduced, positive denominator)."""
    if den == 0:
        raise ZeroDenominatorError("zero denominator")
    return Fraction(int(num), int(den))


def floor(x) -> int:
    """The unique integer ``i`` with ``i <= x < i + 1`` (rounds toward -inf)."""
    x = Fraction(x)
    return x.numerator // x.denominator


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def bits(n: int) -> int:
    """Length of the binary representation of ``|n|``."""
    return abs(int(n)).bit_length()


def format_rational(x) -> str:
    """Render as ``num/den``, or just ``num`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}")
    neg, num, den = m.groups()
    value = normalize_rational(int(num), int(den) if den is not None else 1)
    return -value if neg else value


def isqrt_exact(x) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None

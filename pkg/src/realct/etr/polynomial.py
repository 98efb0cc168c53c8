"""Sparse multivariate polynomials with exact coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
name; the empty tuple is the constant monomial.  Coefficients are ``int``
or ``Fraction``; zero coefficients are never stored.
"""
from __future__ import annotations

import math
from fractions import Fraction

from ..exactnum import format_rational

Monomial = tuple


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_factors(m: Monomial) -> list:
    """``x^2*y`` as ``['x', 'x', 'y']``."""
    return [v for v, e in m for _ in range(e)]


def term_order_key(m: Monomial):
    # graded, then lexicographic with earlier variable names heavier
    return (-mono_degree(m), mono_factors(m))


class Polynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c != 0:
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                clean[tuple(sorted(mono))] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> Polynomial:
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> Polynomial:
        return cls({((name, 1),): 1})

    # -- algebra -----------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree_in(self, var: str) -> int:
        return max((e for m in self.terms for v, e in m if v == var), default=0)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: term_order_key(t[0]))

    def evaluate(self, assignment) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            val = Fraction(c)
            for v, e in mono:
                val *= Fraction(assignment[v]) ** e
            total += val
        return total

    def clear_denominators(self) -> Polynomial:
        """Multiply through by the positive lcm of the coefficient denominators."""
        lcm = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        return self * lcm if lcm != 1 else self

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            mag = -c if neg else c
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                text = format_rational(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{format_rational(mag)}*{body}"
            if i == 0:
                parts.append(f"-{text}" if neg else text)
            else:
                parts.append(f"- {text}" if neg else f"+ {text}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _lift(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial.const(x)

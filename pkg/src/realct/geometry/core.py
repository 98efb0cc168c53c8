"""Exact points, lines, orientation, order types and point-line duality."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from ..errors import ParseError, PreconditionError
from ..exactnum import format_rational, parse_rational, sign


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _q(self.x))
        object.__setattr__(self, "y", _q(self.y))

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, k) -> Point:
        return Point(self.x * k, self.y * k)

    def __str__(self):
        return f"{format_rational(self.x)} {format_rational(self.y)}"


@dataclass(frozen=True)
class SlopeLine:
    """The non-vertical line ``y = a*x - b``."""
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _q(self.a))
        object.__setattr__(self, "b", _q(self.b))

    def at(self, x) -> Fraction:
        return self.a * x - self.b

    def side(self, p: Point) -> int:
        """+1 if ``p`` is above the line, 0 on it, -1 below."""
        return sign(p.y - self.at(p.x))

    def general(self) -> GeneralLine:
        return GeneralLine(self.a, Fraction(-1), -self.b)

    def __str__(self):
        return f"y = {format_rational(self.a)}*x - {format_rational(self.b)}"


@dataclass(frozen=True)
class GeneralLine:
    """The line ``A*x + B*y + C = 0``."""
    A: Fraction
    B: Fraction
    C: Fraction

    def __post_init__(self):
        for f in ("A", "B", "C"):
            object.__setattr__(self, f, _q(getattr(self, f)))
        if self.A == 0 and self.B == 0:
            raise PreconditionError("line needs (A, B) != (0, 0)")

    @classmethod
    def through(cls, p: Point, q: Point) -> GeneralLine:
        if p == q:
            raise PreconditionError("two distinct points define a line")
        A = q.y - p.y
        B = p.x - q.x
        return cls(A, B, -(A * p.x + B * p.y))

    def value(self, p: Point) -> Fraction:
        return self.A * p.x + self.B * p.y + self.C

    def contains(self, p: Point) -> bool:
        return self.value(p) == 0

    def __str__(self):
        return " ".join(format_rational(v) for v in (self.A, self.B, self.C))


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of ``det[q - p, r - p]``: +1 counterclockwise, -1 clockwise, 0 collinear."""
    return sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))


def collinear(p: Point, q: Point, r: Point) -> bool:
    return orient(p, q, r) == 0


def parallel(p: Point, q: Point, r: Point, s: Point) -> bool:
    """Whether the direction ``q - p`` is parallel to ``s - r``."""
    d1, d2 = q - p, s - r
    return d1.x * d2.y - d1.y * d2.x == 0


# ---------------------------------------------------------------------------
# Order types


@dataclass(frozen=True)
class OrderType:
    n: int
    chirotope: dict  # (i, j, k) with distinct indices -> -1 | 0 | +1

    def __call__(self, i, j, k) -> int:
        return self.chirotope[(i, j, k)]


@dataclass(frozen=True)
class PartialOrderType:
    n: int
    signs: dict  # a subset of the triples

    def __post_init__(self):
        for (i, j, k), s in self.signs.items():
            if len({i, j, k}) < 3 or not all(0 <= t < self.n for t in (i, j, k)):
                raise PreconditionError(f"bad triple {(i, j, k)}")
            if s not in (-1, 0, 1):
                raise PreconditionError(f"bad sign {s}")
            for perm in permutations((i, j, k)):
                if perm in self.signs and self.signs[perm] != s * _parity(perm, (i, j, k)):
                    raise PreconditionError(f"signs of {(i, j, k)} and {perm} are not alternating")


def _parity(perm, base) -> int:
    # sign of the permutation taking base to perm
    idx = [base.index(v) for v in perm]
    inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if idx[a] > idx[b])
    return -1 if inversions % 2 else 1


def order_type(ps: list) -> OrderType:
    if len(ps) < 3:
        raise PreconditionError("an order type needs at least 3 points")
    chi = {t: orient(ps[t[0]], ps[t[1]], ps[t[2]])
           for t in permutations(range(len(ps)), 3)}
    return OrderType(len(ps), chi)


def check_partial_order_type(ps: list, pot: PartialOrderType) -> bool:
    if pot.n != len(ps):
        raise PreconditionError(f"order type is for {pot.n} points, got {len(ps)}")
    return all(orient(ps[i], ps[j], ps[k]) == s for (i, j, k), s in pot.signs.items())


# ---------------------------------------------------------------------------
# Duality


def dual(obj):
    """Point ``(a, b)`` <-> line ``y = a*x - b``."""
    if isinstance(obj, Point):
        return SlopeLine(obj.x, obj.y)
    if isinstance(obj, SlopeLine):
        return Point(obj.a, obj.b)
    raise TypeError(f"cannot dualize {type(obj).__name__}")


def cyclic_order(ps: list, p: Point) -> list:
    """Indices of ``ps`` in the order a line through ``p`` meets them.

    The line starts vertical and turns counterclockwise, so points are
    met by increasing slope of the line ``p q``; points straight above or
    below ``p`` come first.  Points on a common line through ``p`` are
    ordered by distance from ``p``.  This is the left-to-right order in
    which ``dual(p)`` crosses the lines ``dual(q)``.
    """
    if any(q == p for q in ps):
        raise PreconditionError("p must differ from every point")

    def key(i):
        q = ps[i]
        dx, dy = q.x - p.x, q.y - p.y
        dist = dx * dx + dy * dy
        if dx == 0:
            return (0, Fraction(0), dist)
        return (1, dy / dx, dist)

    return sorted(range(len(ps)), key=key)


# ---------------------------------------------------------------------------
# Text input


def parse_points(text: str) -> list:
    """One ``x y`` rational pair per line; ``#`` comments allowed."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        if len(words) != 2:
            raise ParseError("expected 'x y'", line=lineno)
        try:
            out.append(Point(parse_rational(words[0]), parse_rational(words[1])))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return out


def parse_lines(text: str) -> list:
    """One ``A B C`` triple per line, meaning ``A*x + B*y + C = 0``."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        if len(words) != 3:
            raise ParseError("expected 'A B C'", line=lineno)
        try:
            out.append(GeneralLine(*(parse_rational(w) for w in words)))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
        except PreconditionError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return out

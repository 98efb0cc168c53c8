"""Projective maps of the plane in homogeneous coordinates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DegeneracyError, PreconditionError
from ..exactnum import format_rational
from .core import GeneralLine, Point


def _det3(m) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


@dataclass(frozen=True)
class ProjectiveMap:
    matrix: tuple  # 3x3 rows of Fractions, acting on column vectors (x, y, 1)

    def __post_init__(self):
        m = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if _det3(m) == 0:
            raise PreconditionError("projective map must be nonsingular")

    def homogeneous(self, v) -> tuple:
        return tuple(sum(row[i] * v[i] for i in range(3)) for row in self.matrix)

    def apply(self, p: Point) -> Point:
        X, Y, W = self.homogeneous((p.x, p.y, Fraction(1)))
        if W == 0:
            raise DegeneracyError(f"({p}) is sent to infinity")
        return Point(X / W, Y / W)

    def is_finite(self, p: Point) -> bool:
        return self.homogeneous((p.x, p.y, Fraction(1)))[2] != 0

    def inverse(self) -> ProjectiveMap:
        m = self.matrix
        det = _det3(m)
        cof = [[(m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
                 - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3])
                for j in range(3)] for i in range(3)]
        return ProjectiveMap(tuple(tuple(c / det for c in row) for row in cof))

    def text(self) -> str:
        return "".join(" ".join(format_rational(v) for v in row) + "\n" for row in self.matrix)


def projective_send_to_infinity(line: GeneralLine) -> ProjectiveMap:
    """A map whose third output coordinate is ``A*x + B*y + C``.

    Points of ``line`` get ``w = 0`` (infinity); all other affine points stay
    affine.  The first two rows translate a point ``o`` off the line to the
    origin: ``o = (0, 0)`` when ``C != 0``, else ``o = (A, B)``, which keeps
    the determinant (the line's value at ``o``) nonzero.
    """
    A, B, C = line.A, line.B, line.C
    ox, oy = (Fraction(0), Fraction(0)) if C != 0 else (A, B)
    return ProjectiveMap(((1, 0, -ox), (0, 1, -oy), (A, B, C)))


def meet(l1: GeneralLine, l2: GeneralLine):
    """Intersection as homogeneous ``(X, Y, W)``; ``W = 0`` for parallel lines.

    Returns None when the lines coincide.
    """
    X = l1.B * l2.C - l1.C * l2.B
    Y = l1.C * l2.A - l1.A * l2.C
    W = l1.A * l2.B - l1.B * l2.A
    if X == 0 and Y == 0 and W == 0:
        return None
    return X, Y, W

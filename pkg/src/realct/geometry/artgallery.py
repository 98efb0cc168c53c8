"""The art-gallery inversion gadget as an exact predicate.

Fixed layout: the critical wall is the segment ``X = 4``, ``1/2 <= Y <= 2``,
its points labelled by their height.  The green guard sits at ``(0, -x)``
on a vertical guard segment, parallel to the wall, and looks past the
pivot ``(2, 0)`` halfway between them.  The red guard sits at
``(3 - y, -1)`` on a horizontal guard segment and looks past the pivot
``(3, 0)``.  Green sees the wall up to height ``s``, red from height ``t``
upwards; together they cover it iff ``s >= t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import PreconditionError
from .core import Point

WALL_X = Fraction(4)
WALL_LOW, WALL_HIGH = Fraction(1, 2), Fraction(2)
GREEN_PIVOT = Point(2, 0)
RED_PIVOT = Point(3, 0)


def _hit_wall(guard: Point, pivot: Point) -> Fraction:
    """Height at which the ray from ``guard`` through ``pivot`` meets ``X = WALL_X``."""
    dx, dy = pivot.x - guard.x, pivot.y - guard.y
    return guard.y + dy * (WALL_X - guard.x) / dx


@dataclass(frozen=True)
class InversionGadget:
    green: Point
    red: Point
    s: Fraction  # highest wall point the green guard sees
    t: Fraction  # lowest wall point the red guard sees

    @property
    def covered(self) -> bool:
        return self.s >= self.t


def inversion_gadget(x, y) -> InversionGadget:
    x, y = Fraction(x), Fraction(y)
    for name, v in (("x", x), ("y", y)):
        if not WALL_LOW <= v <= WALL_HIGH:
            raise PreconditionError(f"{name} must lie in [1/2, 2]")
    green = Point(0, -x)
    red = Point(3 - y, -1)
    return InversionGadget(green, red, _hit_wall(green, GREEN_PIVOT), _hit_wall(red, RED_PIVOT))


def artgallery_inversion_check(x, y) -> bool:
    """Whether the two guards together see the whole critical wall."""
    return inversion_gadget(x, y).covered

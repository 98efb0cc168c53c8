"""Constraint systems: ETR-AM (x=1, x+y=z, x*y=z) and UN-INV (x=1, x+y=z, x*y=1)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import IncompleteAssignmentError, ParseError


@dataclass(frozen=True)
class One:
    x: str

    def holds(self, a):
        return a[self.x] == 1

    def names(self):
        return (self.x,)

    def __str__(self):
        return f"ONE {self.x}"


@dataclass(frozen=True)
class Add:
    x: str
    y: str
    z: str

    def holds(self, a):
        return a[self.x] + a[self.y] == a[self.z]

    def names(self):
        return (self.x, self.y, self.z)

    def __str__(self):
        return f"ADD {self.x} {self.y} {self.z}"


@dataclass(frozen=True)
class Mul:
    x: str
    y: str
    z: str

    def holds(self, a):
        return a[self.x] * a[self.y] == a[self.z]

    def names(self):
        return (self.x, self.y, self.z)

    def __str__(self):
        return f"MUL {self.x} {self.y} {self.z}"


@dataclass(frozen=True)
class Inv:
    x: str
    y: str

    def holds(self, a):
        return a[self.x] * a[self.y] == 1

    def names(self):
        return (self.x, self.y)

    def __str__(self):
        return f"INV {self.x} {self.y}"


def _roster(constraints, extra=()):
    seen = dict.fromkeys(extra)
    for c in constraints:
        seen.update(dict.fromkeys(c.names()))
    return tuple(seen)


@dataclass(frozen=True)
class AMSystem:
    variables: tuple
    constraints: tuple

    @classmethod
    def of(cls, constraints, extra=()):
        constraints = tuple(constraints)
        return cls(_roster(constraints, extra), constraints)

    def text(self) -> str:
        return "".join(f"{c}\n" for c in self.constraints)


@dataclass(frozen=True)
class INVSystem:
    variables: tuple
    constraints: tuple

    @classmethod
    def of(cls, constraints, extra=()):
        constraints = tuple(constraints)
        return cls(_roster(constraints, extra), constraints)

    def text(self) -> str:
        return "".join(f"{c}\n" for c in self.constraints)


def check_system(s, a) -> bool:
    """Exact satisfaction of every constraint of an AM or INV system."""
    missing = [v for v in s.variables if v not in a]
    if missing:
        raise IncompleteAssignmentError(f"no value for {', '.join(missing)}")
    vals = {v: Fraction(a[v]) for v in s.variables}
    return all(c.holds(vals) for c in s.constraints)


_ARITY = {"ONE": (One, 1), "ADD": (Add, 3), "MUL": (Mul, 3), "INV": (Inv, 2)}


def parse_system(text: str):
    """Read ``ONE x`` / ``ADD x y z`` / ``MUL x y z`` / ``INV x y`` lines.

    Returns an :class:`INVSystem` if any ``INV`` appears, else an
    :class:`AMSystem`; mixing ``MUL`` and ``INV`` is an error.
    """
    constraints = []
    kinds = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        op = words[0].upper()
        if op not in _ARITY:
            raise ParseError(f"unknown constraint {words[0]!r}", line=lineno)
        cls, arity = _ARITY[op]
        if len(words) != arity + 1:
            raise ParseError(f"{op} takes {arity} variable(s)", line=lineno)
        kinds.add(op)
        constraints.append(cls(*words[1:]))
    if {"MUL", "INV"} <= kinds:
        raise ParseError("a system cannot mix MUL and INV")
    return (INVSystem if "INV" in kinds else AMSystem).of(constraints)

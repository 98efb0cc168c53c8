"""von Staudt gadgets: addition and multiplication of values on a line.

A value ``v`` is the point ``(v, 0)`` on the variable line through
``0 = (0, 0)`` and ``1 = (1, 0)``.

Addition fixes ``a = (0, 1)`` and ``b = (y, 1)`` with ``ab || 01``,
``0a || yb`` and ``ax || bz``, which forces ``z = (x + y, 0)``.
Multiplication fixes ``c = (0, 1)`` and ``d = (0, y)`` on a line through
``0`` with ``1c || yd`` and ``xc || zd``, which forces ``z = (x*y, 0)``.

The projective variant moves a parallel gadget by a projective map ``G``
that brings the line at infinity to a finite line ``l_inf``; parallel
pairs then meet on ``l_inf``, and sending ``l_inf`` back to infinity
restores them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DegeneracyError, PreconditionError
from .core import GeneralLine, Point, collinear, parallel
from .projective import ProjectiveMap, meet, projective_send_to_infinity

ADD = "add"
MUL = "mul"
PARALLEL = "parallel"
PROJECTIVE = "projective"


@dataclass
class GadgetConfig:
    kind: str
    variant: str
    points: dict                                 # label -> Point
    collinear: list = field(default_factory=list)  # label triples
    parallel: list = field(default_factory=list)   # ((p, q), (r, s)): line pq || line rs
    line_inf: GeneralLine | None = None
    concurrent: list = field(default_factory=list)  # line pairs that must meet on line_inf
    to_parallel: ProjectiveMap | None = None       # sends line_inf to infinity

    def verify(self) -> bool:
        """Every stored requirement holds exactly."""
        P = self.points
        if not all(collinear(P[a], P[b], P[c]) for a, b, c in self.collinear):
            return False
        if not all(parallel(P[p], P[q], P[r], P[s]) for (p, q), (r, s) in self.parallel):
            return False
        for (p, q), (r, s) in self.concurrent:
            hit = meet(GeneralLine.through(P[p], P[q]), GeneralLine.through(P[r], P[s]))
            if hit is None:  # the two lines coincide, so they share every point
                continue
            X, Y, W = hit
            if W == 0:
                return False
            L = self.line_inf
            if L.A * X + L.B * Y + L.C * W != 0:
                return False
        return True

    def straightened(self) -> GadgetConfig:
        """The configuration after sending ``line_inf`` to infinity."""
        if self.to_parallel is None:
            return self
        H = self.to_parallel
        pts = {k: H.apply(p) for k, p in self.points.items()}
        return GadgetConfig(self.kind, PARALLEL, pts, list(self.collinear),
                            list(self.concurrent))

    def output(self) -> Point:
        """The encoded result point ``z`` in parallel coordinates."""
        return self.straightened().points["z"]


def _parallel_gadget(kind, x, y) -> GadgetConfig:
    O, I = Point(0, 0), Point(1, 0)
    X, Y = Point(x, 0), Point(y, 0)
    line = [("0", "1", "x"), ("0", "1", "y"), ("0", "1", "z")]
    if kind == ADD:
        if y == 0:
            raise DegeneracyError("addition gadget needs y != 0 (b would coincide with a)")
        a, b = Point(0, 1), Point(y, 1)
        z = Point(x + y, 0)
        pts = {"0": O, "1": I, "x": X, "y": Y, "z": z, "a": a, "b": b}
        pairs = [(("0", "a"), ("y", "b")), (("a", "x"), ("b", "z")), (("a", "b"), ("0", "1"))]
        return GadgetConfig(ADD, PARALLEL, pts, line, pairs)
    if kind == MUL:
        if y in (0, 1):
            raise DegeneracyError("multiplication gadget needs y not in {0, 1} (d would "
                                  "coincide with 0 or c)")
        c, d = Point(0, 1), Point(0, y)
        z = Point(x * y, 0)
        pts = {"0": O, "1": I, "x": X, "y": Y, "z": z, "c": c, "d": d}
        pairs = [(("1", "c"), ("y", "d")), (("x", "c"), ("z", "d"))]
        return GadgetConfig(MUL, PARALLEL, pts, line + [("0", "c", "d")], pairs)
    raise PreconditionError(f"unknown gadget kind {kind!r}")


def _candidates():
    # (alpha, beta) = (s/2^j, t/2^i), small magnitudes first
    for j in range(2, 40):
        for i in range(2, j + 1):
            for s in (1, -1):
                for t in (1, -1):
                    yield Fraction(s, 2 ** j), Fraction(t, 2 ** i)


def _projective(cfg: GadgetConfig) -> GadgetConfig:
    """Apply ``G(x, y) = (x, y) / (alpha*x + beta*y + 1)`` for the first valid candidate.

    ``G`` maps the line at infinity onto ``l_inf: alpha*x + beta*y = 1``.
    A candidate is valid when no gadget point is sent to infinity and every
    parallel class gets a finite meeting point (``alpha*dx + beta*dy != 0``).
    """
    dirs = [cfg.points[q] - cfg.points[p] for pair in cfg.parallel for p, q in pair]
    for alpha, beta in _candidates():
        if any(alpha * p.x + beta * p.y + 1 == 0 for p in cfg.points.values()):
            continue
        if any(alpha * d.x + beta * d.y == 0 for d in dirs if d.x or d.y):
            continue
        G = ProjectiveMap(((1, 0, 0), (0, 1, 0), (alpha, beta, 1)))
        # scaled so that the send-to-infinity map is exactly G^-1
        line_inf = GeneralLine(-alpha, -beta, 1)
        H = projective_send_to_infinity(line_inf)
        pts = {k: G.apply(p) for k, p in cfg.points.items()}
        return GadgetConfig(cfg.kind, PROJECTIVE, pts, list(cfg.collinear), [],
                            line_inf, list(cfg.parallel), H)
    raise DegeneracyError("no line at infinity candidate avoids the gadget")  # pragma: no cover


def staudt_gadget(kind: str, variant: str, x, y) -> GadgetConfig:
    x, y = Fraction(x), Fraction(y)
    cfg = _parallel_gadget(kind, x, y)
    if variant == PARALLEL:
        return cfg
    if variant == PROJECTIVE:
        return _projective(cfg)
    raise PreconditionError(f"unknown gadget variant {variant!r}")


def multiplication_ratios_hold(cfg: GadgetConfig) -> bool:
    """The two similar-triangle ratio identities of the multiplication gadget.

    ``|c-1| / |1-0| = |d-y| / |y-0|`` and ``|c-1| / |x-0| = |d-y| / |z-0|``,
    compared as cross-multiplied squared lengths.
    """
    P = cfg.straightened().points

    def d2(p, q):
        v = P[p] - P[q]
        return v.x * v.x + v.y * v.y

    first = d2("c", "1") * d2("y", "0") == d2("d", "y") * d2("1", "0")
    second = d2("c", "1") * d2("z", "0") == d2("d", "y") * d2("x", "0")
    return first and second

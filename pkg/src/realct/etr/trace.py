"""Pass traces: how to carry an explicit solution across a reduction pass.

A trace is an ordered list of ``(name, recipe)`` definitions.  A recipe is a
small tuple evaluated in exact rational arithmetic against the assignment
built so far::

    ("const", q)            q
    ("add", a, b)           a + b          ("sub", a, b)     a - b
    ("mul", a, b)           a * b          ("square", a)     a * a
    ("inv", a)              1 / a          (undefined at 0)
    ("witness", kind, p)    value of a fresh witness for an atom with
                            polynomial p; kind is "inv" (1/p), "sqrt"
                            (sqrt p) or "sqrt_inv" (1/sqrt p), and 0 when
                            the atom is false

Bounded traces use the substitution ``f(t) = t / ((t - 1)(t + 1))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import (IncompleteAssignmentError, IrrationalWitnessError,
                      PreconditionError, UndefinedIntermediateError)
from ..exactnum import format_rational, isqrt_exact

EXTEND = "extend"
BOUNDED = "bounded"
COMPACT = "compact"

FORWARD = "forward"
BACKWARD = "backward"

BISECTION_WIDTH = Fraction(1, 2 ** 40)
# largest squaring chain whose values are materialized (eps has 2^k bits)
MAX_MATERIALIZED_CHAIN = 24


@dataclass
class PassTrace:
    kind: str
    source: tuple          # roster of the pass input
    target: tuple          # roster of the pass output
    definitions: list = field(default_factory=list)
    params: object = None  # CompactParams for compact traces

    def define(self, name, recipe):
        self.definitions.append((name, recipe))

    def text(self) -> str:
        return "".join(f"{name} := {_recipe_text(r)}\n" for name, r in self.definitions)


def _recipe_text(r) -> str:
    op = r[0]
    if op == "const":
        return format_rational(r[1])
    if op == "witness":
        kind, poly = r[1], r[2]
        return {"inv": f"1/({poly})", "sqrt": f"sqrt({poly})",
                "sqrt_inv": f"1/sqrt({poly})"}[kind]
    if op == "square":
        return f"{r[1]}^2"
    if op == "inv":
        return f"1/{r[1]}"
    if op == "f":
        return f"{r[1]}/(({r[1]} - 1)*({r[1]} + 1))"
    sym = {"add": "+", "sub": "-", "mul": "*"}[op]
    return f"{r[1]} {sym} {r[2]}"


def _witness(kind, value):
    if kind == "inv":
        return 1 / value if value != 0 else Fraction(0)
    if value < 0 or (kind == "sqrt_inv" and value == 0):
        return Fraction(0)
    root = isqrt_exact(value)
    if root is None:
        raise IrrationalWitnessError(f"witness needs sqrt({format_rational(value)}), "
                                     "which is irrational")
    return root if kind == "sqrt" else 1 / root


def eval_recipe(r, env) -> Fraction:
    op = r[0]
    if op == "const":
        return Fraction(r[1])
    if op == "witness":
        return _witness(r[1], r[2].evaluate(env))
    if op == "add":
        return env[r[1]] + env[r[2]]
    if op == "sub":
        return env[r[1]] - env[r[2]]
    if op == "mul":
        return env[r[1]] * env[r[2]]
    if op == "square":
        return env[r[1]] * env[r[1]]
    if op == "inv":
        if env[r[1]] == 0:
            raise UndefinedIntermediateError(f"1/{r[1]} with {r[1]} = 0")
        return 1 / env[r[1]]
    raise ValueError(f"unknown recipe {op!r}")


# ---------------------------------------------------------------------------
# The bounded substitution


def bounded_f(t) -> Fraction:
    t = Fraction(t)
    d = (t - 1) * (t + 1)
    if d == 0:
        raise UndefinedIntermediateError(f"f({format_rational(t)}) has a zero denominator")
    return t / d


def bounded_preimage(y, width=BISECTION_WIDTH) -> tuple:
    """Enclosure ``(lo, hi)`` of the unique ``t`` in (-1, 1) with ``f(t) = y``.

    The exact root ``(1 - sqrt(1 + 4y^2)) / (2y)`` is returned as a
    zero-width enclosure when it is rational; otherwise bisection on the
    strictly decreasing ``f`` narrows ``(-1, 1)`` until ``hi - lo <= width``.
    """
    y = Fraction(y)
    if y == 0:
        return Fraction(0), Fraction(0)
    root = isqrt_exact(1 + 4 * y * y)
    if root is not None:
        t = (1 - root) / (2 * y)
        return t, t
    lo, hi = Fraction(-1), Fraction(1)  # f(lo) = +inf > y > -inf = f(hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = bounded_f(mid)
        if fm == y:
            return mid, mid
        if fm > y:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# Solution mapping


def _require(a, names):
    missing = [v for v in names if v not in a]
    if missing:
        raise IncompleteAssignmentError(f"no value for {', '.join(missing)}")


def map_solution(trace: PassTrace, a, direction: str = FORWARD) -> dict:
    """Carry an assignment across a pass.

    For most passes ``forward`` goes from the input system to the output
    system by evaluating the trace's recipes, and ``backward`` drops the
    fresh variables.  Bounded traces run the other way round: ``forward``
    maps a bounded-side solution to the original by ``x = f(x')`` exactly,
    ``backward`` inverts ``f`` (midpoint of the certified enclosure from
    :func:`bounded_preimage`).
    """
    if direction not in (FORWARD, BACKWARD):
        raise PreconditionError(f"direction must be {FORWARD!r} or {BACKWARD!r}")
    if trace.kind == BOUNDED:
        _require(a, trace.target if direction == FORWARD else trace.source)
        if direction == FORWARD:
            return {v: bounded_f(a[v]) for v in trace.source}
        out = {}
        for v in trace.target:
            lo, hi = bounded_preimage(a[v])
            out[v] = (lo + hi) / 2
        return out

    if direction == BACKWARD:
        _require(a, trace.target)
        if trace.kind == COMPACT:
            eps = Fraction(a[trace.params.epsilon_var])
            if eps == 0:
                raise UndefinedIntermediateError("epsilon is 0")
            return {v: Fraction(a[v]) / eps for v in trace.source}
        return {v: Fraction(a[v]) for v in trace.source}

    _require(a, trace.source)
    if trace.kind == COMPACT and trace.params.k > MAX_MATERIALIZED_CHAIN:
        raise PreconditionError(f"epsilon chain of length {trace.params.k} is too long to "
                                f"materialize (limit {MAX_MATERIALIZED_CHAIN})")
    env = {v: Fraction(a[v]) for v in trace.source}
    for name, recipe in trace.definitions:
        env[name] = eval_recipe(recipe, env)
    return {v: env[v] for v in trace.target}


def bounded_enclosures(trace: PassTrace, a) -> dict:
    """Per-variable ``(lo, hi)`` enclosures of the bounded-side preimage of ``a``."""
    if trace.kind != BOUNDED:
        raise PreconditionError("enclosures exist only for bounded traces")
    _require(a, trace.source)
    return {v: bounded_preimage(a[v]) for v in trace.source}

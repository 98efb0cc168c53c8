"""Straight-line programs, the PosSLP decision, and the real RAM tracer.

An SLP is a list of gates ``a_k = a_i op a_j`` (``i, j < k``) over the
implicit constant ``a_0 = 1``; its value is the value of the last gate.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, PreconditionError, UnsupportedTransformError
from .machine import (CondReal, Floor, MachineState, Outcome, Program, RealArith,
                      execute)

_OPS = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b}


@dataclass(frozen=True)
class SLP:
    gates: tuple = ()  # (op, i, j); gate k (1-based) is gates[k - 1]

    def __post_init__(self):
        for k, (op, i, j) in enumerate(self.gates, start=1):
            if op not in _OPS:
                raise ValueError(f"gate a{k}: unknown operator {op!r}")
            if not (0 <= i < k and 0 <= j < k):
                raise ValueError(f"gate a{k} refers forward (a{i}, a{j})")

    def __len__(self):
        return len(self.gates)

    def text(self) -> str:
        return "".join(f"a{k} = a{i} {op} a{j}\n"
                       for k, (op, i, j) in enumerate(self.gates, start=1))


def eval_slp(s: SLP) -> int:
    """Exact value of the final gate.  Sizes can double per gate; beware."""
    vals = [1]
    for op, i, j in s.gates:
        vals.append(_OPS[op](vals[i], vals[j]))
    return vals[-1]


def decide_posslp(s: SLP) -> bool:
    # exact evaluation: exponential in the worst case, fine at desk scale
    return eval_slp(s) > 0


def int_to_slp(n: int) -> SLP:
    """Horner over the binary expansion of ``n``: double, then maybe add 1."""
    if n < 1:
        raise PreconditionError("int_to_slp needs n >= 1")
    gates = []
    for bit in bin(n)[3:]:
        cur = len(gates)
        gates.append(("+", cur, cur))
        if bit == "1":
            gates.append(("+", len(gates), 0))
    return SLP(tuple(gates))


_GATE_RE = re.compile(r"^a(\d+)\s*=\s*a(\d+)\s*([-+*])\s*a(\d+)$")


def parse_slp(text: str) -> SLP:
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        m = _GATE_RE.match(body)
        if not m:
            raise ParseError("malformed gate", line=lineno)
        k, i, op, j = int(m.group(1)), int(m.group(2)), m.group(3), int(m.group(4))
        if k != len(gates) + 1:
            raise ParseError(f"expected gate a{len(gates) + 1}, got a{k}", line=lineno)
        if i >= k or j >= k:
            raise ParseError("gate refers to a later gate", line=lineno)
        gates.append((op, i, j))
    return SLP(tuple(gates))


# ---------------------------------------------------------------------------
# Tracer


@dataclass
class TraceDecision:
    outcome: Outcome
    queries: list = field(default_factory=list)  # (SLP, answer of "is it > 0?")
    pool: SLP = SLP()


class _SLPReals:
    """Real-register backend whose values are gate indices into one pool."""

    def __init__(self):
        self.gates = []
        self.queries = []
        self._zero = None

    def _gate(self, op, i, j):
        self.gates.append((op, i, j))
        return len(self.gates)

    def zero(self):
        if self._zero is None:
            self._zero = self._gate("-", 0, 0)
        return self._zero

    def const(self, value):
        return 0 if value == 1 else self.zero()

    def arith(self, op, a, b):
        return self._gate(op, a, b)

    def positive(self, g) -> bool:
        # the pool is append-only, so the prefix up to g is that register's SLP
        s = SLP(tuple(self.gates[:g]))
        answer = decide_posslp(s)
        self.queries.append((s, answer))
        return answer

    def floor(self, g):  # pragma: no cover - rejected before execution
        raise UnsupportedTransformError("FLOOR cannot be traced")

    def from_int(self, value):  # pragma: no cover
        raise UnsupportedTransformError("FLOOR cannot be traced")


def trace_program(p: Program, word_input: dict | None = None, fuel: int = 1_000_000) -> TraceDecision:
    """Replay ``p`` keeping an SLP per real register instead of its value.

    Every real sign test is answered by :func:`decide_posslp` on the
    register's SLP and logged, in execution order.
    """
    for ins in p.instructions:
        if isinstance(ins, Floor):
            raise UnsupportedTransformError("tracer does not support FLOOR")
        if isinstance(ins, RealArith) and ins.op == "/":
            raise UnsupportedTransformError("tracer needs a division-free program "
                                            "(run eliminate_division first)")
    reals = _SLPReals()
    state = MachineState(word_mem=dict(word_input or {}))
    outcome = execute(p, state, fuel, reals)
    return TraceDecision(outcome, reals.queries, SLP(tuple(reals.gates)))


def count_sign_tests(p: Program) -> int:
    return sum(isinstance(ins, CondReal) for ins in p.instructions)

"""Word RAM / real RAM assembly: parser, interpreter and division elimination.

Assembly, one instruction per line, ``#`` starts a comment::

    M[i] <- c                 assign constant
    M[i] <- M[j]              copy
    M[i] <- M[M[j]]           copy via indirect access
    M[i] <- a op b            word arithmetic, op in + - * /  (floor division)
    R[i] <- 0 | 1             real constants
    R[i] <- R[j]              real copy
    R[i] <- R[j] op R[k]      real arithmetic, op in + - * /
    FLOOR R[i] -> M[j]        rounding (needs floor_enabled); "-> R[j]" also accepted
    IFGT a b GOTO L           also IFGE IFLT IFLE IFEQ IFNE
    IFPOS R[i] GOTO L         real sign test
    GOTO L
    ACCEPT | REJECT | RETURN a | RETURN NO

Word operands ``a``/``b`` are integer constants, ``M[i]`` or ``M[M[i]]``; a
destination may also be indirect.  Conditionals accept any of the final
four forms as their action, so ``IFEQ M[M[2]] M[1] RETURN M[2]`` is legal.
Jump targets count instructions from 1; blank and comment lines do not count.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import ParseError, UnsupportedTransformError
from .exactnum import floor as rat_floor
from .exactnum import format_rational

# ---------------------------------------------------------------------------
# Instruction set


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Direct:
    addr: int

    def __str__(self):
        return f"M[{self.addr}]"


@dataclass(frozen=True)
class Indirect:
    addr: int

    def __str__(self):
        return f"M[M[{self.addr}]]"


Operand = Union[Const, Direct, Indirect]
WordRef = Union[Direct, Indirect]


@dataclass(frozen=True)
class Goto:
    target: int  # 0-based instruction index

    def __str__(self):
        return f"GOTO {self.target + 1}"


@dataclass(frozen=True)
class Accept:
    def __str__(self):
        return "ACCEPT"


@dataclass(frozen=True)
class Reject:
    def __str__(self):
        return "REJECT"


@dataclass(frozen=True)
class Return:
    value: Operand | None  # None is the "NO" sentinel

    def __str__(self):
        return "RETURN NO" if self.value is None else f"RETURN {self.value}"


Action = Union[Goto, Accept, Reject, Return]


@dataclass(frozen=True)
class WordAssign:
    dest: WordRef
    src: Operand

    def __str__(self):
        return f"{self.dest} <- {self.src}"


@dataclass(frozen=True)
class WordArith:
    dest: WordRef
    op: str
    left: Operand
    right: Operand

    def __str__(self):
        return f"{self.dest} <- {self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class RealConst:
    dest: int
    value: int

    def __str__(self):
        return f"R[{self.dest}] <- {self.value}"


@dataclass(frozen=True)
class RealCopy:
    dest: int
    src: int

    def __str__(self):
        return f"R[{self.dest}] <- R[{self.src}]"


@dataclass(frozen=True)
class RealArith:
    dest: int
    op: str
    left: int
    right: int

    def __str__(self):
        return f"R[{self.dest}] <- R[{self.left}] {self.op} R[{self.right}]"


@dataclass(frozen=True)
class Floor:
    src: int
    dest: int
    to_real: bool = False

    def __str__(self):
        kind = "R" if self.to_real else "M"
        return f"FLOOR R[{self.src}] -> {kind}[{self.dest}]"


@dataclass(frozen=True)
class CondWord:
    cmp: str
    left: Operand
    right: Operand
    action: Action

    def __str__(self):
        return f"IF{self.cmp} {self.left} {self.right} {self.action}"


@dataclass(frozen=True)
class CondReal:
    src: int
    action: Action

    def __str__(self):
        return f"IFPOS R[{self.src}] {self.action}"


Instruction = Union[WordAssign, WordArith, RealConst, RealCopy, RealArith, Floor,
                    CondWord, CondReal, Goto, Accept, Reject, Return]

_REAL_CLASS = (RealConst, RealCopy, RealArith, CondReal)

_CMP = {
    "GT": lambda a, b: a > b,
    "GE": lambda a, b: a >= b,
    "LT": lambda a, b: a < b,
    "LE": lambda a, b: a <= b,
    "EQ": lambda a, b: a == b,
    "NE": lambda a, b: a != b,
}


@dataclass(frozen=True)
class Program:
    instructions: tuple
    floor_enabled: bool = False

    def __post_init__(self):
        if not self.instructions:
            raise ParseError("empty program")
        n = len(self.instructions)
        for ins in self.instructions:
            act = ins.action if isinstance(ins, (CondWord, CondReal)) else ins
            if isinstance(act, Goto) and not 0 <= act.target < n:
                raise ParseError(f"jump target {act.target + 1} out of range")

    def __len__(self):
        return len(self.instructions)

    def source(self) -> str:
        return "".join(f"{ins}\n" for ins in self.instructions)


# ---------------------------------------------------------------------------
# Parser

_NUM = r"-?\d+"
_WORD_OPERAND = rf"(?:M\[M\[\d+\]\]|M\[\d+\]|{_NUM})"
_RE_WORD_DEST = re.compile(r"^(M\[M\[\d+\]\]|M\[\d+\])\s*<-\s*(.+)$")
_RE_WORD_ARITH = re.compile(rf"^({_WORD_OPERAND})\s*([-+*/])\s*({_WORD_OPERAND})$")
_RE_REAL_DEST = re.compile(r"^R\[(\d+)\]\s*<-\s*(.+)$")
_RE_REAL_ARITH = re.compile(r"^R\[(\d+)\]\s*([-+*/])\s*R\[(\d+)\]$")
_RE_FLOOR = re.compile(r"^FLOOR\s+R\[(\d+)\]\s*->\s*([MR])\[(\d+)\]$")
_RE_IFW = re.compile(rf"^IF(GT|GE|LT|LE|EQ|NE)\s+({_WORD_OPERAND})\s+({_WORD_OPERAND})\s+(.+)$")
_RE_IFPOS = re.compile(r"^IFPOS\s+R\[(\d+)\]\s+(.+)$")


def _operand(text: str) -> Operand:
    text = text.strip()
    m = re.fullmatch(r"M\[M\[(\d+)\]\]", text)
    if m:
        return Indirect(int(m.group(1)))
    m = re.fullmatch(r"M\[(\d+)\]", text)
    if m:
        return Direct(int(m.group(1)))
    if re.fullmatch(_NUM, text):
        return Const(int(text))
    raise ValueError(f"malformed operand {text!r}")


def _action(text: str) -> Action:
    text = text.strip()
    parts = text.split()
    head = parts[0] if parts else ""
    if head == "GOTO" and len(parts) == 2 and parts[1].isdigit():
        return Goto(int(parts[1]) - 1)
    if text == "ACCEPT":
        return Accept()
    if text == "REJECT":
        return Reject()
    if head == "RETURN" and len(parts) == 2:
        if parts[1] in ("NO", '"NO"'):
            return Return(None)
        return Return(_operand(parts[1]))
    if head in ("GOTO", "RETURN", "ACCEPT", "REJECT"):
        raise ValueError(f"malformed operand in {text!r}")
    raise KeyError(head)


def _parse_line(text: str):
    m = _RE_WORD_DEST.match(text)
    if m:
        dest = _operand(m.group(1))
        rhs = m.group(2).strip()
        a = _RE_WORD_ARITH.match(rhs)
        if a:
            return WordArith(dest, a.group(2), _operand(a.group(1)), _operand(a.group(3)))
        return WordAssign(dest, _operand(rhs))
    m = _RE_REAL_DEST.match(text)
    if m:
        dest = int(m.group(1))
        rhs = m.group(2).strip()
        a = _RE_REAL_ARITH.match(rhs)
        if a:
            return RealArith(dest, a.group(2), int(a.group(1)), int(a.group(3)))
        c = re.fullmatch(r"R\[(\d+)\]", rhs)
        if c:
            return RealCopy(dest, int(c.group(1)))
        if rhs in ("0", "1"):
            return RealConst(dest, int(rhs))
        raise ValueError(f"malformed real operand {rhs!r} (only constants 0 and 1 may be loaded)")
    m = _RE_FLOOR.match(text)
    if m:
        return Floor(int(m.group(1)), int(m.group(3)), to_real=m.group(2) == "R")
    m = _RE_IFW.match(text)
    if m:
        return CondWord(m.group(1), _operand(m.group(2)), _operand(m.group(3)), _action(m.group(4)))
    m = _RE_IFPOS.match(text)
    if m:
        return CondReal(int(m.group(1)), _action(m.group(2)))
    return _action(text)


def parse_program(text: str, floor_enabled: bool = False) -> Program:
    """Parse assembly source; errors name the offending source line."""
    instructions = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            ins = _parse_line(body)
        except KeyError as exc:
            raise ParseError(f"unknown opcode {exc.args[0]!r}", line=lineno) from None
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        instructions.append(ins)
        lines.append(lineno)
    if not instructions:
        raise ParseError("empty program")
    n = len(instructions)
    for ins, lineno in zip(instructions, lines):
        act = ins.action if isinstance(ins, (CondWord, CondReal)) else ins
        if isinstance(act, Goto) and not 0 <= act.target < n:
            raise ParseError(f"jump target {act.target + 1} out of range", line=lineno)
    return Program(tuple(instructions), floor_enabled)


# ---------------------------------------------------------------------------
# Machine state and outcomes


@dataclass
class CostMeter:
    word_ops: int = 0
    real_ops: int = 0
    floor_ops: int = 0

    @property
    def total(self) -> int:
        return self.word_ops + self.real_ops + self.floor_ops

    def add(self, other: "CostMeter") -> None:
        self.word_ops += other.word_ops
        self.real_ops += other.real_ops
        self.floor_ops += other.floor_ops

    def __str__(self):
        return f"word_ops={self.word_ops} real_ops={self.real_ops} floor_ops={self.floor_ops}"


@dataclass
class MachineState:
    word_mem: dict = field(default_factory=dict)
    real_mem: dict = field(default_factory=dict)
    pc: int = 0
    cost: CostMeter = field(default_factory=CostMeter)

    def copy(self) -> "MachineState":
        return MachineState(dict(self.word_mem), dict(self.real_mem), self.pc,
                            CostMeter(self.cost.word_ops, self.cost.real_ops, self.cost.floor_ops))


class OutcomeKind(Enum):
    ACCEPT = "ACCEPT"
    REJECT = "REJECT"
    RETURN = "RETURN"
    OUT_OF_FUEL = "OUT_OF_FUEL"
    FAULT = "FAULT"


NO = "NO"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    value: object = None
    reason: str | None = None

    @property
    def decision(self):
        """True/False for accept/reject, otherwise the outcome kind itself."""
        if self.kind is OutcomeKind.ACCEPT:
            return True
        if self.kind is OutcomeKind.REJECT:
            return False
        return self.kind

    def __str__(self):
        if self.kind is OutcomeKind.RETURN:
            return f"RETURN {self.value}"
        if self.kind is OutcomeKind.FAULT:
            return f"FAULT {self.reason}"
        return self.kind.value


class _Fault(Exception):
    pass


class ExactReals:
    """Real-register arithmetic over exact rationals."""

    def zero(self):
        return Fraction(0)

    def const(self, value):
        return Fraction(value)

    def load(self, value):
        return Fraction(value)

    def arith(self, op, a, b):
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if b == 0:
            raise _Fault("real division by zero")
        return a / b

    def positive(self, a) -> bool:
        return a > 0

    def floor(self, a) -> int:
        return rat_floor(a)

    def from_int(self, value):
        return Fraction(value)


def _addr(ref, mem) -> int:
    if isinstance(ref, Direct):
        a = ref.addr
    else:
        a = mem.get(ref.addr, 0)
    if a < 0:
        raise _Fault(f"negative address {a}")
    return a


def _read(op, mem) -> int:
    if isinstance(op, Const):
        return op.value
    return mem.get(_addr(op, mem), 0)


def execute(p: Program, state: MachineState, fuel: int, reals) -> Outcome:
    """Run ``p`` in place on ``state`` using ``reals`` for real-register values.

    ``reals`` supplies zero/const/arith/positive/floor; swapping it is how the
    tracer in :mod:`realct.slp` replays a program symbolically.
    """
    wm, rm, cost = state.word_mem, state.real_mem, state.cost
    code = p.instructions
    n = len(code)
    steps = 0
    try:
        while True:
            if steps >= fuel:
                return Outcome(OutcomeKind.OUT_OF_FUEL)
            if not 0 <= state.pc < n:
                return Outcome(OutcomeKind.FAULT, reason="fell off the end of the program")
            ins = code[state.pc]
            steps += 1
            act = None
            if isinstance(ins, WordAssign):
                wm[_addr(ins.dest, wm)] = _read(ins.src, wm)
            elif isinstance(ins, WordArith):
                a, b = _read(ins.left, wm), _read(ins.right, wm)
                if ins.op == "+":
                    v = a + b
                elif ins.op == "-":
                    v = a - b
                elif ins.op == "*":
                    v = a * b
                else:
                    if b == 0:
                        raise _Fault("word division by zero")
                    v = a // b
                wm[_addr(ins.dest, wm)] = v
            elif isinstance(ins, RealConst):
                rm[ins.dest] = reals.const(ins.value)
            elif isinstance(ins, RealCopy):
                rm[ins.dest] = (rm[ins.src] if ins.src in rm else reals.zero())
            elif isinstance(ins, RealArith):
                a = rm[ins.left] if ins.left in rm else reals.zero()
                b = rm[ins.right] if ins.right in rm else reals.zero()
                rm[ins.dest] = reals.arith(ins.op, a, b)
            elif isinstance(ins, Floor):
                if not p.floor_enabled:
                    return Outcome(OutcomeKind.FAULT, reason="illegal instruction FLOOR (floor disabled)")
                v = reals.floor((rm[ins.src] if ins.src in rm else reals.zero()))
                if ins.to_real:
                    rm[ins.dest] = reals.from_int(v)
                else:
                    wm[ins.dest] = v
                cost.floor_ops += 1
                state.pc += 1
                continue
            elif isinstance(ins, CondWord):
                if _CMP[ins.cmp](_read(ins.left, wm), _read(ins.right, wm)):
                    act = ins.action
            elif isinstance(ins, CondReal):
                if reals.positive((rm[ins.src] if ins.src in rm else reals.zero())):
                    act = ins.action
            else:
                act = ins

            if isinstance(ins, _REAL_CLASS):
                cost.real_ops += 1
            else:
                cost.word_ops += 1

            if act is None:
                state.pc += 1
            elif isinstance(act, Goto):
                state.pc = act.target
            elif isinstance(act, Accept):
                return Outcome(OutcomeKind.ACCEPT)
            elif isinstance(act, Reject):
                return Outcome(OutcomeKind.REJECT)
            else:
                value = NO if act.value is None else _read(act.value, wm)
                return Outcome(OutcomeKind.RETURN, value)
    except _Fault as exc:
        return Outcome(OutcomeKind.FAULT, reason=str(exc))


def run(p: Program, init: MachineState | None = None, fuel: int = 1_000_000):
    """Execute ``p`` from ``init`` (not modified); returns ``(outcome, final_state)``."""
    state = init.copy() if init is not None else MachineState()
    state.real_mem = {k: Fraction(v) for k, v in state.real_mem.items()}
    outcome = execute(p, state, fuel, ExactReals())
    return outcome, state


def format_state(state: MachineState) -> str:
    words = ",".join(f"{a}={v}" for a, v in sorted(state.word_mem.items()))
    reals = ",".join(f"{a}={format_rational(v)}" for a, v in sorted(state.real_mem.items()))
    return f"M: {words}".rstrip() + "\n" + f"R: {reals}".rstrip() + f"\n{state.cost}"


# ---------------------------------------------------------------------------
# Division elimination


def _real_registers(p: Program) -> set:
    regs = set()
    for ins in p.instructions:
        if isinstance(ins, RealConst):
            regs.add(ins.dest)
        elif isinstance(ins, RealCopy):
            regs.update((ins.dest, ins.src))
        elif isinstance(ins, RealArith):
            regs.update((ins.dest, ins.left, ins.right))
        elif isinstance(ins, CondReal):
            regs.add(ins.src)
    return regs


def _retarget(act, where):
    return Goto(where[act.target]) if isinstance(act, Goto) else act


def eliminate_division(p: Program) -> Program:
    """Rewrite ``p`` so that no real division remains.

    Real register ``r`` becomes the pair (``R[r]``, ``R[D+r]``) holding a
    numerator and denominator; a prologue sets every denominator to 1, so a
    preloaded input ``q`` is read as ``(q, 1)``.  Sign tests check the sign
    of numerator times denominator.  A division by a zero value still faults
    (through a word division by zero).  Programs without real division are
    returned unchanged.
    """
    if any(isinstance(ins, Floor) for ins in p.instructions):
        raise UnsupportedTransformError("division elimination does not support FLOOR")
    if not any(isinstance(ins, RealArith) and ins.op == "/" for ins in p.instructions):
        return p

    regs = _real_registers(p)
    D = max(regs) + 1
    s0, s1, s2 = 2 * D, 2 * D + 1, 2 * D + 2

    def den(r):
        return D + r

    def expand(ins, at, where):
        # ``at`` is the absolute index of the first emitted instruction
        if isinstance(ins, RealConst):
            return [ins, RealConst(den(ins.dest), 1)]
        if isinstance(ins, RealCopy):
            return [ins, RealCopy(den(ins.dest), den(ins.src))]
        if isinstance(ins, RealArith):
            i, j, k = ins.dest, ins.left, ins.right
            if ins.op in "+-":
                return [RealArith(s0, "*", j, den(k)),
                        RealArith(s1, "*", k, den(j)),
                        RealArith(s2, "*", den(j), den(k)),
                        RealArith(i, ins.op, s0, s1),
                        RealCopy(den(i), s2)]
            if ins.op == "*":
                return [RealArith(s0, "*", j, k),
                        RealArith(s1, "*", den(j), den(k)),
                        RealCopy(i, s0),
                        RealCopy(den(i), s1)]
            return [RealArith(s0, "*", k, k),
                    CondReal(s0, Goto(at + 3)),
                    WordArith(Direct(0), "/", Const(1), Const(0)),
                    RealArith(s1, "*", j, den(k)),
                    RealArith(s2, "*", den(j), k),
                    RealCopy(i, s1),
                    RealCopy(den(i), s2)]
        if isinstance(ins, CondReal):
            return [RealArith(s0, "*", ins.src, den(ins.src)),
                    CondReal(s0, _retarget(ins.action, where))]
        if isinstance(ins, CondWord):
            return [CondWord(ins.cmp, ins.left, ins.right, _retarget(ins.action, where))]
        if isinstance(ins, Goto):
            return [_retarget(ins, where)]
        return [ins]

    prologue = [RealConst(den(r), 1) for r in sorted(regs)]
    # expansion sizes do not depend on jump targets, so lay out first
    where, pos = [], len(prologue)
    dummy = list(range(len(p.instructions)))
    for ins in p.instructions:
        where.append(pos)
        pos += len(expand(ins, pos, dummy))
    out = list(prologue)
    for ins in p.instructions:
        out.extend(expand(ins, len(out), where))
    return Program(tuple(out), p.floor_enabled)

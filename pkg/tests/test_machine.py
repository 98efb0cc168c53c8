import random
from fractions import Fraction
from pathlib import Path

import pytest

from oracles import division_program, nonzero_rational
from realct.errors import ParseError, UnsupportedTransformError
from realct.machine import (Floor, MachineState, OutcomeKind, RealArith, WordAssign,
                            eliminate_division, format_state, parse_program, run)

DEMOS = Path(__file__).resolve().parent.parent / "demos"
LINEAR_SEARCH = (DEMOS / "linear_search.ram").read_text()


def _divisions(p):
    return sum(isinstance(i, RealArith) and i.op == "/" for i in p.instructions)


def test_linear_search_has_six_instructions():
    assert len(parse_program(LINEAR_SEARCH)) == 6


def test_linear_search_finds_target():
    out, _ = run(parse_program(LINEAR_SEARCH), MachineState({0: 3, 1: 7, 3: 2, 4: 7, 5: 9}))
    assert out.kind is OutcomeKind.RETURN and out.value == 4


def test_linear_search_reports_absence():
    out, _ = run(parse_program(LINEAR_SEARCH), MachineState({0: 3, 1: 7, 3: 2, 4: 5, 5: 9}))
    assert str(out) == "RETURN NO"


def test_single_assign():
    p = parse_program("M[0] <- 5")
    assert len(p) == 1 and isinstance(p.instructions[0], WordAssign)


def test_unknown_opcode_names_line():
    with pytest.raises(ParseError, match="unknown opcode.*line 1"):
        parse_program("FROB M[1]")


@pytest.mark.parametrize("src", ["M[0] <- 1\nGOTO 5", "R[0] <- 7", "IFGT M[0] GOTO 1", ""])
def test_malformed_programs(src):
    with pytest.raises(ParseError):
        parse_program(src)


def test_out_of_fuel_counts_steps():
    out, state = run(parse_program("GOTO 1"), fuel=100)
    assert out.kind is OutcomeKind.OUT_OF_FUEL
    assert state.cost.word_ops == 100


def test_division_by_zero_faults():
    out, _ = run(parse_program("M[0] <- 1 / M[1]\nACCEPT"))
    assert out.kind is OutcomeKind.FAULT
    out, _ = run(parse_program("R[1] <- 1\nR[2] <- R[1] / R[0]\nACCEPT"))
    assert out.kind is OutcomeKind.FAULT


def test_floor_needs_flag():
    src = "R[0] <- 1\nFLOOR R[0] -> M[0]\nRETURN M[0]"
    out, _ = run(parse_program(src))
    assert out.kind is OutcomeKind.FAULT
    out, _ = run(parse_program(src, floor_enabled=True))
    assert str(out) == "RETURN 1"


def test_cost_classes_and_state_text():
    p = parse_program("M[0] <- 2\nR[0] <- 1\nR[1] <- R[0] + R[0]\nIFPOS R[1] GOTO 6\nREJECT\nACCEPT")
    out, state = run(p)
    assert out.decision is True
    assert (state.cost.word_ops, state.cost.real_ops) == (2, 3)
    assert format_state(state).splitlines()[:2] == ["M: 0=2", "R: 0=1,1=2"]


def test_run_is_deterministic_and_fuel_monotone():
    p = parse_program((DEMOS / "gcd.ram").read_text())
    first = run(p, MachineState({0: 84, 1: 36}))
    assert str(first[0]) == "RETURN 12"
    assert str(run(p, MachineState({0: 84, 1: 36}))[0]) == str(first[0])
    steps = first[1].cost.total
    for fuel in (steps, steps + 1, 10 * steps):
        assert str(run(p, MachineState({0: 84, 1: 36}), fuel=fuel)[0]) == "RETURN 12"
    assert run(p, MachineState({0: 84, 1: 36}), fuel=steps - 1)[0].kind is OutcomeKind.OUT_OF_FUEL


RATIO_ABOVE_THREE = """\
R[2] <- 1
R[3] <- R[2] + R[2]
R[3] <- R[3] + R[2]
R[4] <- R[0] / R[1]
R[4] <- R[4] - R[3]
IFPOS R[4] GOTO 8
REJECT
ACCEPT
"""


def test_ratio_program_eliminated():
    p = parse_program(RATIO_ABOVE_THREE)
    q = eliminate_division(p)
    assert _divisions(p) == 1 and _divisions(q) == 0
    rng = random.Random(3)
    for _ in range(50):
        x, y = nonzero_rational(rng), nonzero_rational(rng)
        expected = x / y > 3
        assert run(p, MachineState(real_mem={0: x, 1: y}))[0].decision is expected
        assert run(q, MachineState(real_mem={0: x, 1: y}))[0].decision is expected


def test_no_division_is_identity():
    p = parse_program("R[1] <- R[0] * R[0]\nIFPOS R[1] GOTO 3\nACCEPT")
    assert eliminate_division(p) == p


def test_subtraction_uses_cross_products():
    q = eliminate_division(parse_program("R[2] <- R[0] / R[1]\nR[3] <- R[2] - R[0]\nACCEPT"))
    _, state = run(q, MachineState(real_mem={0: Fraction(3, 1), 1: Fraction(4, 1)}))
    # register 3 ends as a pair (numerator, denominator) with value 3/4 - 3
    values = set(state.real_mem.values())
    assert any(a / b == Fraction(-9, 4) for a in values for b in values if b)


def test_floor_refused():
    p = parse_program("R[0] <- R[0] / R[1]\nFLOOR R[0] -> M[0]\nACCEPT", floor_enabled=True)
    with pytest.raises(UnsupportedTransformError):
        eliminate_division(p)


@pytest.mark.parametrize("seed", range(10))
def test_random_division_programs(seed):
    rng = random.Random(seed)
    p = parse_program(division_program(rng))
    q = eliminate_division(p)
    assert _divisions(q) == 0
    assert len(q) <= 10 * len(p) + 10
    for _ in range(20):
        init = {0: nonzero_rational(rng), 1: nonzero_rational(rng)}
        o1, s1 = run(p, MachineState(real_mem=dict(init)))
        o2, s2 = run(q, MachineState(real_mem=dict(init)))
        assert o1.decision == o2.decision
        assert s2.cost.total <= 10 * s1.cost.total + 20

"""``realct`` command line.

Exit status: 0 on success, 1 on a domain or file error, 2 on a usage error.
Output is plain text, one result per line, rationals as ``num/den``.
"""
from __future__ import annotations

import argparse
import re
import sys

from . import realalgo
from .errors import ParseError, RealctError
from .etr import (BACKWARD, FORWARD, And, am_to_uninv, check_system, eval_formula,
                  format_node, map_solution, parse_formula, parse_system, threecol_to_etr, to_am,
                  to_bounded, to_compact, to_equations)
from .etr.passes import CompactParams
from .exactnum import format_rational, parse_rational
from .geometry import (GeneralLine, Point, SlopeLine, arrangement_from_lines,
                       curve_from_arrangement, cyclic_order, dual, inversion_gadget,
                       order_type, orient, parse_arrangement, parse_lines, parse_points,
                       projective_send_to_infinity, staudt_gadget, udg_instance)
from .graph import parse_graph
from .machine import (CostMeter, MachineState, eliminate_division, format_state,
                      parse_program, run)
from .slp import decide_posslp, eval_slp, int_to_slp, parse_slp, trace_program

DEFAULT_FUEL = 1_000_000


class _Parser(argparse.ArgumentParser):
    """Treats ``-3/4`` like a negative number rather than an option."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


# ---------------------------------------------------------------------------
# Helpers


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _pairs(text: str | None, value) -> dict:
    """``"a=v,b=w"`` into a dict, keys kept as strings."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ParseError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = value(v.strip())
    return out


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}") from None


def _state(args) -> MachineState:
    words = {_int(k): _int(v) for k, v in _pairs(args.mem, str).items()}
    reals = {_int(k): v for k, v in _pairs(args.real, parse_rational).items()}
    return MachineState(word_mem=words, real_mem=reals)


def _fuel(args) -> int:
    return args.fuel if args.fuel is not None else (args.g_fuel or DEFAULT_FUEL)


def _floor(args) -> bool:
    return bool(getattr(args, "enable_floor", False) or args.g_enable_floor)


def _assignment(text: str | None) -> dict:
    return _pairs(text, parse_rational)


def _print_assignment(a: dict) -> None:
    for k in sorted(a):
        print(f"{k} = {format_rational(a[k])}")


# ---------------------------------------------------------------------------
# vm


def cmd_vm_run(args):
    p = parse_program(_read(args.file), floor_enabled=_floor(args))
    outcome, state = run(p, _state(args), fuel=_fuel(args))
    print(outcome)
    if args.state:
        print(format_state(state))
    else:
        print(state.cost)


def cmd_vm_nodiv(args):
    p = parse_program(_read(args.file), floor_enabled=_floor(args))
    sys.stdout.write(eliminate_division(p).source())


# ---------------------------------------------------------------------------
# realalgo


def cmd_factor(args):
    meter = CostMeter()
    print(realalgo.shamir_factor(_int(args.n), meter))
    print(meter)


def cmd_factorial(args):
    meter = CostMeter()
    print(realalgo.factorial_fast(_int(args.n), meter))
    print(meter)


def cmd_gcd(args):
    meter = CostMeter()
    print(realalgo.gcd_fast(_int(args.a), _int(args.b), meter))
    print(meter)


# ---------------------------------------------------------------------------
# slp


def cmd_slp_eval(args):
    print(eval_slp(parse_slp(_read(args.file))))


def cmd_slp_sign(args):
    print("true" if decide_posslp(parse_slp(_read(args.file))) else "false")


def cmd_slp_toslp(args):
    sys.stdout.write(int_to_slp(_int(args.n)).text())


def cmd_slp_trace(args):
    p = parse_program(_read(args.file))
    words = {_int(k): _int(v) for k, v in _pairs(args.mem, str).items()}
    result = trace_program(p, words, fuel=_fuel(args))
    print(result.outcome)
    for k, (s, answer) in enumerate(result.queries, start=1):
        print(f"query {k}: gates={len(s)} positive={'true' if answer else 'false'}")
    print(f"pool gates={len(result.pool)}")


# ---------------------------------------------------------------------------
# etr

_PIPELINE = ("eq", "am", "uninv", "bounded", "compact")


def _reduce(formula, target, L=None, n=None):
    """Run the pass chain ending at ``target``; returns ``(output, traces, params)``."""
    if target == "bounded":
        out, tr = to_bounded(formula)
        return out, [tr], None
    eq, t1 = to_equations(formula)
    if target == "eq":
        return eq, [t1], None
    am, t2 = to_am(eq)
    if target == "am":
        return am, [t1, t2], None
    if target == "uninv":
        inv, t3 = am_to_uninv(am)
        return inv, [t1, t2, t3], None
    L = L if L is not None else formula.length
    n = n if n is not None else max(1, len(formula.roster))
    comp, params, t3 = to_compact(am, L, n)
    return comp, [t1, t2, t3], params


def _print_formula(f):
    """One top-level conjunct per line."""
    kids = f.tree.children if isinstance(f.tree, And) else (f.tree,)
    for k in kids:
        print(format_node(k))


def cmd_etr_parse(args):
    f = parse_formula(_read(args.file))
    print(f)
    print("roster " + " ".join(f.roster))
    print(f"length {f.length}")


def cmd_etr_eval(args):
    f = parse_formula(_read(args.file))
    print("true" if eval_formula(f, _assignment(args.assign)) else "false")


def cmd_etr_reduce(args):
    f = parse_formula(_read(args.file))
    out, traces, params = _reduce(f, args.to, args.L, args.n)
    if isinstance(params, CompactParams):
        print(f"# L={params.L} n={params.n} k={params.k} epsilon={params.epsilon_var}")
    if hasattr(out, "text"):
        sys.stdout.write(out.text())
    else:
        if out.domain:
            print(f"# domain {out.domain}")
        _print_formula(out)
    if args.trace:
        for tr in traces:
            sys.stdout.write("".join(f"# {line}\n" for line in tr.text().splitlines()))


def cmd_etr_check(args):
    text = _read(args.file)
    a = _assignment(args.assign)
    try:
        s = parse_system(text)
    except ParseError:
        f = parse_formula(text)
        print("true" if eval_formula(f, a) else "false")
        return
    print("true" if check_system(s, a) else "false")


def cmd_etr_map(args):
    f = parse_formula(_read(args.file))
    out, traces, _ = _reduce(f, args.to, args.L, args.n)
    a = _assignment(args.assign)
    if args.to == "bounded":
        # bounded traces map bounded -> original forward, original -> bounded backward
        a = map_solution(traces[0], a, BACKWARD if args.direction == FORWARD else FORWARD)
    elif args.direction == FORWARD:
        for tr in traces:
            a = map_solution(tr, a, FORWARD)
    else:
        for tr in reversed(traces):
            a = map_solution(tr, a, BACKWARD)
    _print_assignment(a)


def cmd_etr_threecol(args):
    f = threecol_to_etr(parse_graph(_read(args.file)))
    _print_formula(f)


# ---------------------------------------------------------------------------
# geom


def _q(text):
    return parse_rational(text)


def cmd_geom_orient(args):
    p, q, r = (Point(_q(args.coords[2 * i]), _q(args.coords[2 * i + 1])) for i in range(3))
    print(orient(p, q, r))


def cmd_geom_ordertype(args):
    ot = order_type(parse_points(_read(args.file)))
    for (i, j, k), s in sorted(ot.chirotope.items()):
        if i < j < k:
            print(f"{i} {j} {k} {s}")


def cmd_geom_dual(args):
    a, b = _q(args.a), _q(args.b)
    obj = Point(a, b) if args.kind == "point" else SlopeLine(a, b)
    d = dual(obj)
    if isinstance(d, SlopeLine):
        print(f"line {format_rational(d.a)} {format_rational(d.b)}")
    else:
        print(f"point {d}")


def cmd_geom_cyclic(args):
    ps = parse_points(_read(args.file))
    print(" ".join(map(str, cyclic_order(ps, Point(_q(args.px), _q(args.py))))))


def cmd_geom_sendinf(args):
    H = projective_send_to_infinity(GeneralLine(_q(args.A), _q(args.B), _q(args.C)))
    sys.stdout.write(H.text())


def cmd_geom_staudt(args):
    g = staudt_gadget(args.kind, args.variant, _q(args.x), _q(args.y))
    for label, p in g.points.items():
        print(f"{label} {p}")
    if g.line_inf is not None:
        print(f"line_inf {g.line_inf}")
    print(f"output {g.output()}")
    print(f"verified {'true' if g.verify() and g.straightened().verify() else 'false'}")


def cmd_geom_arr(args):
    sys.stdout.write(arrangement_from_lines(parse_lines(_read(args.file))).text())


def cmd_geom_udg(args):
    sys.stdout.write(udg_instance(parse_arrangement(_read(args.file))).adjacency_text())


def cmd_geom_curve(args):
    c = curve_from_arrangement(parse_arrangement(_read(args.file)))
    print(f"n {c.n}")
    print(f"k {c.k}")
    print(f"curls {c.curls}")
    for idx, lab in enumerate(c.crossings):
        print(f"crossing {idx} " + " ".join(map(str, lab)))
    print("traversal " + " ".join(map(str, c.traversal)))
    print(f"verified {'true' if c.verify() else 'false'}")


def cmd_geom_agcheck(args):
    g = inversion_gadget(_q(args.x), _q(args.y))
    print("true" if g.covered else "false")
    print(f"s {format_rational(g.s)}")
    print(f"t {format_rational(g.t)}")


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    machine_flags = _Parser(add_help=False)
    machine_flags.add_argument("--fuel", type=int, default=None, metavar="N",
                               help="maximum step count")
    machine_flags.add_argument("--enable-floor", action="store_true", help="allow FLOOR")
    machine_flags.add_argument("--mem", help='word inputs, "addr=value,..."')
    machine_flags.add_argument("--real", help='real inputs, "addr=num/den,..."')

    parser = _Parser(prog="realct", description="Exact real-computation toolkit.")
    parser.add_argument("--fuel", dest="g_fuel", type=int, default=None,
                        metavar="N", help="maximum step count for machine runs")
    parser.add_argument("--enable-floor", dest="g_enable_floor", action="store_true",
                        help="allow FLOOR in machine programs")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    vm = sub.add_parser("vm", help="word/real RAM programs").add_subparsers(
        dest="sub", metavar="ACTION", required=True)
    p = vm.add_parser("run", parents=[machine_flags], help="execute a program")
    p.add_argument("file")
    p.add_argument("--state", action="store_true", help="print final memory too")
    p.set_defaults(func=cmd_vm_run)
    p = vm.add_parser("nodiv", parents=[machine_flags], help="eliminate real division")
    p.add_argument("file")
    p.set_defaults(func=cmd_vm_nodiv)

    p = sub.add_parser("factor", help="smallest prime factor by rounding")
    p.add_argument("n")
    p.set_defaults(func=cmd_factor)
    p = sub.add_parser("factorial", help="n! by binomial block extraction")
    p.add_argument("n")
    p.set_defaults(func=cmd_factorial)
    p = sub.add_parser("gcd", help="gcd by parity shaving")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_gcd)

    slp = sub.add_parser("slp", help="straight-line programs").add_subparsers(
        dest="sub", metavar="ACTION", required=True)
    for name, func, what in (("eval", cmd_slp_eval, "value of an SLP file"),
                             ("sign", cmd_slp_sign, "is the value positive")):
        p = slp.add_parser(name, help=what)
        p.add_argument("file")
        p.set_defaults(func=func)
    p = slp.add_parser("toslp", help="SLP computing n")
    p.add_argument("n")
    p.set_defaults(func=cmd_slp_toslp)
    p = slp.add_parser("trace", parents=[machine_flags], help="run a program through SLPs")
    p.add_argument("file")
    p.set_defaults(func=cmd_slp_trace)

    etr = sub.add_parser("etr", help="formulas and reduction passes").add_subparsers(
        dest="sub", metavar="ACTION", required=True)
    p = etr.add_parser("parse", help="canonical form, roster and length")
    p.add_argument("file")
    p.set_defaults(func=cmd_etr_parse)
    p = etr.add_parser("eval", help="truth value under an assignment")
    p.add_argument("file")
    p.add_argument("--assign", required=True, help='"x=1/2,y=0"')
    p.set_defaults(func=cmd_etr_eval)
    for name, func, what in (("reduce", cmd_etr_reduce, "apply the passes up to --to"),
                             ("map", cmd_etr_map, "carry a solution through the passes")):
        p = etr.add_parser(name, help=what)
        p.add_argument("--to", choices=_PIPELINE, required=True)
        p.add_argument("--L", type=int, default=None, help="compact: length bound")
        p.add_argument("--n", type=int, default=None, help="compact: variable count")
        p.add_argument("file")
        if name == "reduce":
            p.add_argument("--trace", action="store_true", help="also print the pass traces")
        else:
            p.add_argument("--assign", required=True)
            p.add_argument("--direction", choices=(FORWARD, BACKWARD), default=FORWARD)
        p.set_defaults(func=func)
    p = etr.add_parser("check", help="check a system or formula file")
    p.add_argument("file")
    p.add_argument("--assign", required=True)
    p.set_defaults(func=cmd_etr_check)
    p = etr.add_parser("threecol", help="3-colouring formula of a graph file")
    p.add_argument("file")
    p.set_defaults(func=cmd_etr_threecol)

    geom = sub.add_parser("geom", help="exact geometry").add_subparsers(
        dest="sub", metavar="ACTION", required=True)
    p = geom.add_parser("orient", help="orientation of three points")
    p.add_argument("coords", nargs=6, metavar="C")
    p.set_defaults(func=cmd_geom_orient)
    p = geom.add_parser("ordertype", help="chirotope of a points file")
    p.add_argument("file")
    p.set_defaults(func=cmd_geom_ordertype)
    p = geom.add_parser("dual", help="point (a, b) <-> line y = a*x - b")
    p.add_argument("kind", choices=("point", "line"))
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_geom_dual)
    p = geom.add_parser("cyclic", help="rotation order of points around (px, py)")
    p.add_argument("file")
    p.add_argument("px")
    p.add_argument("py")
    p.set_defaults(func=cmd_geom_cyclic)
    p = geom.add_parser("sendinf", help="map sending A*x + B*y + C = 0 to infinity")
    for c in "ABC":
        p.add_argument(c)
    p.set_defaults(func=cmd_geom_sendinf)
    p = geom.add_parser("staudt", help="addition / multiplication gadget")
    p.add_argument("kind", choices=("add", "mul"))
    p.add_argument("variant", choices=("parallel", "projective"))
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_geom_staudt)
    p = geom.add_parser("arr", help="arrangement of a lines file")
    p.add_argument("file")
    p.set_defaults(func=cmd_geom_arr)
    p = geom.add_parser("udg", help="unit-disk reduction graph of an arrangement file")
    p.add_argument("file")
    p.set_defaults(func=cmd_geom_udg)
    p = geom.add_parser("curve", help="curve-straightening instance of an arrangement file")
    p.add_argument("file")
    p.set_defaults(func=cmd_geom_curve)
    p = geom.add_parser("agcheck", help="art-gallery inversion gadget predicate")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_geom_agcheck)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (RealctError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

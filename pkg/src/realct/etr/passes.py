"""Reduction passes between formula and constraint-system forms.

Each pass returns its output together with a :class:`PassTrace` recording
how fresh variables are computed from a solution of the input.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import PreconditionError
from ..graph import Graph
from .formula import CLOSED_CUBE, OPEN_CUBE, And, Atom, Formula, Not, conj, nnf
from .polynomial import Polynomial, mono_factors
from .systems import Add, AMSystem, INVSystem, Inv, Mul, One
from .trace import BOUNDED, COMPACT, EXTEND, PassTrace


class FreshNames:
    def __init__(self, prefix: str, taken):
        self.prefix = prefix
        self.taken = set(taken)
        self.counter = 0

    def named(self, stem: str) -> str:
        name, i = stem, 0
        while name in self.taken:
            i += 1
            name = f"{stem}_{i}"
        self.taken.add(name)
        return name

    def __call__(self) -> str:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return name


# ---------------------------------------------------------------------------
# Inequalities and disjunctions to a conjunction of equations


def to_equations(f: Formula):
    """Rewrite ``f`` as a conjunction of polynomial equations ``p = 0``.

    Negations are pushed to the atoms, then with a fresh ``u`` per atom:
    ``p > 0`` becomes ``p*u^2 - 1 = 0``, ``p >= 0`` becomes ``p - u^2 = 0``,
    ``p != 0`` becomes ``p*u - 1 = 0`` (``<`` and ``<=`` use ``-p``), and a
    disjunction of equation sets becomes the set of pairwise products.
    """
    fresh = FreshNames("u", f.roster)
    trace = PassTrace(EXTEND, f.roster, ())

    def convert(node) -> list:
        if isinstance(node, Atom):
            p, rel = node.poly, node.rel
            if rel == "=":
                return [p]
            if rel in ("<", "<="):
                p, rel = -p, ">" if rel == "<" else ">="
            u = Polynomial.var(name := fresh())
            if rel == "!=":
                trace.define(name, ("witness", "inv", p))
                return [p * u - 1]
            if rel == ">":
                trace.define(name, ("witness", "sqrt_inv", p))
                return [p * u * u - 1]
            trace.define(name, ("witness", "sqrt", p))
            return [p - u * u]
        if isinstance(node, And):
            return [q for c in node.children for q in convert(c)]
        acc = convert(node.children[0])
        for c in node.children[1:]:
            acc = [a * b for a in acc for b in convert(c)]
        return acc

    polys = convert(nnf(f.tree))
    out = Formula.of(conj(Atom(p, "=") for p in polys), roster=f.roster)
    trace.target = out.roster
    return out, trace


# ---------------------------------------------------------------------------
# Arithmetization into x = 1, x + y = z, x * y = z


class _AMBuilder:
    def __init__(self, roster):
        self.fresh = FreshNames("t", roster)
        self.trace = PassTrace(EXTEND, tuple(roster), ())
        self.cons = []
        self.one = self.fresh.named("one")
        self.cons.append(One(self.one))
        self.trace.define(self.one, ("const", 1))
        self._zero = None
        self._powers = {1: self.one}   # 2^i -> variable
        self._coefs = {1: self.one}

    def gate(self, kind, a, b, out=None):
        name = out or self.fresh()
        self.cons.append((Add if kind == "add" else Mul)(a, b, name))
        if out is None:
            self.trace.define(name, (kind, a, b))
        return name

    @property
    def zero(self):
        if self._zero is None:
            self._zero = self.fresh.named("zero")
            self.cons.append(Add(self._zero, self.one, self.one))
            self.trace.define(self._zero, ("const", 0))
        return self._zero

    def power_of_two(self, p: int) -> str:
        if p not in self._powers:
            half = self.power_of_two(p // 2)
            self._powers[p] = self.gate("add", half, half)
        return self._powers[p]

    def coefficient(self, c: int) -> str:
        """``c`` from 1 by doubling, then adding the lower set bits."""
        if c not in self._coefs:
            top = 1 << (c.bit_length() - 1)
            acc = self.power_of_two(top)
            rest = c - top
            while rest:
                bit = 1 << (rest.bit_length() - 1)
                acc = self.gate("add", acc, self.power_of_two(bit))
                rest -= bit
            self._coefs[c] = acc
        return self._coefs[c]

    def term(self, c: int, mono, out=None) -> tuple:
        """Variable holding ``c * mono``; the last gate writes ``out`` if one is built."""
        factors = mono_factors(mono)
        if c != 1 or not factors:
            factors.append(self.coefficient(c))
        if len(factors) == 1:
            return factors[0], False
        acc = factors[0]
        for i, fac in enumerate(factors[1:], start=2):
            acc = self.gate("mul", acc, fac, out if i == len(factors) else None)
        return acc, out is not None

    def sum(self, terms, out=None) -> str:
        if len(terms) == 1:
            var, wrote = self.term(*terms[0], out=out)
            if out is not None and not wrote:
                self.gate("add", var, self.zero, out)
                return out
            return var
        acc = self.term(*terms[0])[0]
        for i, t in enumerate(terms[1:], start=2):
            v = self.term(*t)[0]
            acc = self.gate("add", acc, v, out if i == len(terms) else None)
        return acc

    def equation(self, p: Polynomial):
        pos = [(c, m) for m, c in p.sorted_terms() if c > 0]
        neg = [(-c, m) for m, c in p.sorted_terms() if c < 0]
        if not pos and not neg:
            return
        if not pos or not neg:
            v = self.sum(pos or neg)
            self.gate("add", v, self.one, self.one)  # v + 1 = 1 forces v = 0
            return
        self.sum(pos, out=self.sum(neg))


def to_am(f: Formula):
    """Arithmetize an equational formula into One/Add/Mul constraints.

    Each ``p = 0`` is split as ``P = N`` over its positive and negative
    terms; monomials become chains of products, positive coefficients are
    built from 1 by doubling, and the last gate of ``P`` writes into the
    variable holding ``N``.  A one-sided ``P = 0`` becomes ``P + 1 = 1``.
    """
    if not f.is_equational():
        raise PreconditionError("to_am needs a conjunction of equations (run to_equations)")
    b = _AMBuilder(f.roster)
    kids = f.tree.children if isinstance(f.tree, And) else (f.tree,)
    for atom in kids:
        if not all(isinstance(c, int) for c in atom.poly.terms.values()):
            raise PreconditionError("coefficients must be integers")
        b.equation(atom.poly)
    system = AMSystem.of(b.cons, extra=f.roster)
    b.trace.target = system.variables
    return system, b.trace


# ---------------------------------------------------------------------------
# Multiplication to squaring to inversion


def am_to_uninv(s: AMSystem):
    """Replace every ``x*y = z`` by additions and inversions.

    ``x*y = z`` first becomes ``A = x+y, B = A^2, C = x^2, D = y^2,
    E = C+D, B = F+E, F = z+z``; each squaring ``y = x^2`` then becomes
    ``A*x = 1, B = x+1, C*B = 1, D+C = A, E*D = 1, E = y+x``, since
    ``1/(1/x - 1/(x+1)) = x^2 + x``.  The second block has no solution
    extension at ``x = 0`` or ``x = -1``.
    """
    fresh = FreshNames("v", s.variables)
    trace = PassTrace(EXTEND, s.variables, ())
    out = []
    one = next((c.x for c in s.constraints if isinstance(c, One)), None)
    if one is None and any(isinstance(c, Mul) for c in s.constraints):
        one = fresh.named("one")
        out.append(One(one))
        trace.define(one, ("const", 1))

    def new(recipe):
        name = fresh()
        trace.define(name, recipe)
        return name

    def square(x, y):
        a = new(("inv", x))
        b = new(("add", x, one))
        c = new(("inv", b))
        d = new(("sub", a, c))
        e = new(("inv", d))
        out.extend([Inv(a, x), Add(x, one, b), Inv(c, b), Add(d, c, a),
                    Inv(e, d), Add(y, x, e)])

    for con in s.constraints:
        if not isinstance(con, Mul):
            out.append(con)
            continue
        x, y, z = con.x, con.y, con.z
        a = new(("add", x, y))
        b = new(("square", a))
        c = new(("square", x))
        d = new(("square", y))
        e = new(("add", c, d))
        f = new(("add", z, z))
        out.append(Add(x, y, a))
        square(a, b)
        square(x, c)
        square(y, d)
        out.extend([Add(c, d, e), Add(f, e, b), Add(z, z, f)])
    system = INVSystem.of(out, extra=s.variables)
    trace.target = system.variables
    return system, trace


# ---------------------------------------------------------------------------
# Bounded and compact domains

_FLIPPED = {"=": "=", "!=": "!=", "<": ">", ">": "<", "<=": ">=", ">=": "<="}


def bounded_polynomial(p: Polynomial) -> tuple:
    """``p`` with every ``x`` replaced by ``x/(x^2 - 1)``, times ``prod (x^2 - 1)^deg_x``.

    Returns the new polynomial and the total degree multiplier ``sum deg_x``,
    whose parity tells whether the sign flips on the open cube.
    """
    degs = {v: p.degree_in(v) for v in sorted(p.variables())}
    out = Polynomial()
    for mono, c in p.terms.items():
        exps = dict(mono)
        term = Polynomial.const(c)
        for v, d in degs.items():
            e = exps.get(v, 0)
            x = Polynomial.var(v)
            term = term * x ** e * (x * x - 1) ** (d - e)
        out = out + term
    return out, sum(degs.values())


def _bounded_node(node):
    if isinstance(node, Atom):
        poly, total = bounded_polynomial(node.poly)
        rel = _FLIPPED[node.rel] if total % 2 else node.rel
        return Atom(poly, rel)
    if isinstance(node, Not):
        return Not(_bounded_node(node.child))
    return type(node)(tuple(_bounded_node(c) for c in node.children))


def to_bounded(f: Formula):
    """Equivalent formula whose solutions live in the open cube (-1, 1)^n.

    A bounded solution ``x'`` maps to the original by ``x = f(x')`` with
    ``f(t) = t/((t - 1)(t + 1))``, a bijection from (-1, 1) onto the reals.
    """
    out = Formula.of(_bounded_node(f.tree), roster=f.roster, domain=OPEN_CUBE)
    return out, PassTrace(BOUNDED, f.roster, out.roster)


@dataclass(frozen=True)
class CompactParams:
    L: int
    n: int
    k: int
    epsilon_var: str

    @property
    def exponent_bound(self) -> tuple:
        """``L^(8n)`` kept symbolic as ``(L, 8n)``."""
        return (self.L, 8 * self.n)

    def verify(self) -> bool:
        """``2^k >= L^(8n)`` in exact integer arithmetic."""
        return 2 ** self.k >= self.L ** (8 * self.n)


def chain_length(L: int, n: int) -> int:
    """Smallest ``k >= 1`` with ``2^k >= L^(8n)``, i.e. ``max(1, ceil(8n log2 L))``."""
    if L < 4:
        raise PreconditionError("compactification needs L >= 4")
    if n < 1:
        raise PreconditionError("compactification needs n >= 1")
    return max(1, (L ** (8 * n) - 1).bit_length())


def to_compact(s: AMSystem, L: int, n: int):
    """Scale every variable by ``eps = 2^(-2^k)`` so solutions fit in [-1, 1].

    The squaring chain ``2*e1 - 1 = 0, e(i+1) - e(i)^2 = 0`` gives
    ``e(i) = 2^(-2^(i-1))``; it runs to ``e(k+1) = eps``.  Additions are
    unchanged, ``x*y = z`` becomes ``x*y - z*eps = 0`` and ``x = 1`` becomes
    ``x - eps = 0``.
    """
    k = chain_length(L, n)
    fresh = FreshNames("e", s.variables)
    chain = [fresh() for _ in range(k + 1)]
    eps = chain[-1]
    params = CompactParams(L, n, k, eps)
    trace = PassTrace(COMPACT, s.variables, (), params=params)

    V = Polynomial.var
    atoms = [Atom(2 * V(chain[0]) - 1, "=")]
    trace.define(chain[0], ("const", Fraction(1, 2)))
    for prev, cur in zip(chain, chain[1:]):
        atoms.append(Atom(V(cur) - V(prev) * V(prev), "="))
        trace.define(cur, ("square", prev))
    for c in s.constraints:
        if isinstance(c, Add):
            atoms.append(Atom(V(c.x) + V(c.y) - V(c.z), "="))
        elif isinstance(c, Mul):
            atoms.append(Atom(V(c.x) * V(c.y) - V(c.z) * V(eps), "="))
        else:
            atoms.append(Atom(V(c.x) - V(eps), "="))
    for v in s.variables:
        trace.define(v, ("mul", v, eps))
    out = Formula.of(And(tuple(atoms)), roster=s.variables + tuple(chain), domain=CLOSED_CUBE)
    trace.target = out.roster
    return out, params, trace


# ---------------------------------------------------------------------------
# 3-colouring


def color_variable(i: int) -> str:
    return f"x{i}"


def threecol_to_etr(g: Graph) -> Formula:
    """``x(x-1)(x-2) = 0`` per vertex and ``x_u - x_v != 0`` per edge.

    Vertex number ``i`` (in ``g.vertices`` order) gets variable ``x<i>``.
    """
    if not g.vertices:
        raise PreconditionError("graph has no vertices")
    index = {v: i for i, v in enumerate(g.vertices)}
    V = Polynomial.var
    atoms = []
    for i in range(len(g.vertices)):
        x = V(color_variable(i))
        atoms.append(Atom(x * (x - 1) * (x - 2), "="))
    for e in sorted(tuple(sorted(index[v] for v in e)) for e in g.edges):
        atoms.append(Atom(V(color_variable(e[0])) - V(color_variable(e[1])), "!="))
    return Formula.of(conj(atoms))

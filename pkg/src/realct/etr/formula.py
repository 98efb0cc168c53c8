"""Quantifier-free formulas over polynomial atoms, with parser and evaluator.

Grammar (whitespace-insensitive)::

    formula := conj ("OR" conj)*
    conj    := unary ("AND" unary)*
    unary   := "NOT" unary | "(" formula ")" | expr REL expr
    expr    := ["-"] term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "-" factor | base ["^" INT]
    base    := INT ["/" INT] | VAR | "(" expr ")"

``REL`` is one of ``= != < <= > >=``; variables match ``[a-z][a-z0-9_]*``.
Each atom is stored as ``p REL 0`` with integer coefficients.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..errors import IncompleteAssignmentError, ParseError
from .polynomial import Polynomial

RELATIONS = ("=", "!=", "<", "<=", ">", ">=")
_NEGATED = {"=": "!=", "!=": "=", "<": ">=", ">=": "<", ">": "<=", "<=": ">"}

OPEN_CUBE = "open"      # every variable in (-1, 1)
CLOSED_CUBE = "closed"  # every variable in [-1, 1]


@dataclass(frozen=True)
class Atom:
    poly: Polynomial
    rel: str

    def holds(self, a) -> bool:
        v = self.poly.evaluate(a)
        return {"=": v == 0, "!=": v != 0, "<": v < 0, "<=": v <= 0,
                ">": v > 0, ">=": v >= 0}[self.rel]


@dataclass(frozen=True)
class And:
    children: tuple


@dataclass(frozen=True)
class Or:
    children: tuple


@dataclass(frozen=True)
class Not:
    child: object


Node = Union[Atom, And, Or, Not]


def conj(children) -> Node:
    children = tuple(children)
    return children[0] if len(children) == 1 else And(children)


def node_variables(node: Node) -> set:
    if isinstance(node, Atom):
        return node.poly.variables()
    if isinstance(node, Not):
        return node_variables(node.child)
    out = set()
    for c in node.children:
        out |= node_variables(c)
    return out


def iter_atoms(node: Node):
    if isinstance(node, Atom):
        yield node
    elif isinstance(node, Not):
        yield from iter_atoms(node.child)
    else:
        for c in node.children:
            yield from iter_atoms(c)


@dataclass(frozen=True)
class Formula:
    tree: Node
    roster: tuple = ()
    domain: str | None = None  # None, OPEN_CUBE or CLOSED_CUBE
    length: int = field(default=0, compare=False)

    @classmethod
    def of(cls, tree: Node, roster=None, domain=None) -> Formula:
        names = set(roster or ()) | node_variables(tree)
        text = format_node(tree)
        return cls(tree, tuple(sorted(names)), domain, len(text))

    def __str__(self):
        return format_node(self.tree)

    def atoms(self) -> list:
        return list(iter_atoms(self.tree))

    def is_equational(self) -> bool:
        t = self.tree
        kids = t.children if isinstance(t, And) else (t,)
        return all(isinstance(k, Atom) and k.rel == "=" for k in kids)


# ---------------------------------------------------------------------------
# Serialization


def format_node(node: Node, parent: str = "") -> str:
    if isinstance(node, Atom):
        return f"{node.poly} {node.rel} 0"
    if isinstance(node, Not):
        return f"NOT ({format_node(node.child)})"
    word = " AND " if isinstance(node, And) else " OR "
    text = word.join(format_node(c, word) for c in node.children)
    # parenthesize a disjunction under a conjunction (and vice versa for clarity)
    return f"({text})" if parent and parent != word else text


# ---------------------------------------------------------------------------
# Parser

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<kw>AND|OR|NOT)\b|(?P<var>[a-z][a-z0-9_]*)"
                       r"|(?P<rel>[<>=!]+)|(?P<op>[-+*^/()]))")


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", pos=start)
        kind = m.lastgroup
        start = m.start(kind)
        tok = m.group(kind)
        if kind == "rel" and tok not in RELATIONS:
            raise ParseError(f"unknown relation symbol {tok!r}", pos=start)
        tokens.append((kind, tok, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", pos=tok[2])
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.toks[self.i]
        return tok[0] == kind and (value is None or tok[1] == value)

    # formula level
    def formula(self):
        kids = [self.conj()]
        while self.at("kw", "OR"):
            self.take()
            kids.append(self.conj())
        return kids[0] if len(kids) == 1 else Or(_flatten(Or, kids))

    def conj(self):
        kids = [self.unary()]
        while self.at("kw", "AND"):
            self.take()
            kids.append(self.unary())
        return kids[0] if len(kids) == 1 else And(_flatten(And, kids))

    def unary(self):
        if self.at("kw", "NOT"):
            self.take()
            return Not(self.unary())
        if self.at("op", "("):
            save = self.i
            first = None
            try:
                self.take()
                inner = self.formula()
                self.take("op", ")")
                # "(x + 1)^2 = 0" also starts with "(", so back off if arithmetic follows
                if not (self.at("rel") or any(self.at("op", o) for o in "+-*^/")):
                    return inner
            except ParseError as exc:
                first = exc
            self.i = save
            try:
                return self.atom()
            except ParseError as exc:
                # report whichever reading got further into the text
                if first is not None and (first.pos or 0) > (exc.pos or 0):
                    raise first from None
                raise
        return self.atom()

    def atom(self):
        lhs = self.expr()
        tok = self.peek()
        if tok[0] != "rel":
            raise ParseError(f"expected a relation, found {tok[1] or 'end of input'!r}", pos=tok[2])
        self.take()
        rhs = self.expr()
        return Atom((lhs - rhs).clear_denominators(), tok[1])

    # polynomial level
    def expr(self):
        if self.at("op", "-"):
            self.take()
            acc = -self.term()
        else:
            acc = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.at("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        if self.at("op", "-"):
            self.take()
            return -self.factor()
        base = self.base()
        if self.at("op", "^"):
            self.take()
            base = base ** int(self.take("num")[1])
        return base

    def base(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            value = Fraction(int(tok[1]))
            if self.at("op", "/"):
                self.take()
                den = self.take("num")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", pos=den[2])
                value /= int(den[1])
            return Polynomial.const(value)
        if tok[0] == "var":
            self.take()
            return Polynomial.var(tok[1])
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", pos=tok[2])


def _flatten(cls, kids):
    out = []
    for k in kids:
        out.extend(k.children if isinstance(k, cls) else (k,))
    return tuple(out)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    tree = p.formula()
    p.take("end")
    return Formula.of(tree)


# ---------------------------------------------------------------------------
# Evaluation and normal forms


def in_domain(value, domain) -> bool:
    if domain == OPEN_CUBE:
        return -1 < value < 1
    if domain == CLOSED_CUBE:
        return -1 <= value <= 1
    return True


def eval_node(node: Node, a) -> bool:
    if isinstance(node, Atom):
        return node.holds(a)
    if isinstance(node, Not):
        return not eval_node(node.child, a)
    if isinstance(node, And):
        return all(eval_node(c, a) for c in node.children)
    return any(eval_node(c, a) for c in node.children)


def eval_formula(f: Formula, a) -> bool:
    """Exact truth value; variables outside the formula's domain make it false."""
    missing = [v for v in f.roster if v not in a]
    if missing:
        raise IncompleteAssignmentError(f"no value for {', '.join(missing)}")
    vals = {v: Fraction(a[v]) for v in f.roster}
    if f.domain and not all(in_domain(x, f.domain) for x in vals.values()):
        return False
    return eval_node(f.tree, vals)


def negate_atom(atom: Atom) -> Atom:
    return Atom(atom.poly, _NEGATED[atom.rel])


def nnf(node: Node, negate: bool = False) -> Node:
    """Push negations down to the atoms."""
    if isinstance(node, Atom):
        return negate_atom(node) if negate else node
    if isinstance(node, Not):
        return nnf(node.child, not negate)
    kids = tuple(nnf(c, negate) for c in node.children)
    flip = isinstance(node, And) == negate  # De Morgan swaps the connective
    return Or(kids) if flip else And(kids)

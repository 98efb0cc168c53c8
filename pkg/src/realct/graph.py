"""Simple undirected graphs with string vertex labels."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ParseError, PreconditionError


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: frozenset  # of frozenset({u, v})

    @classmethod
    def build(cls, vertices, edges=()) -> Graph:
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise PreconditionError("duplicate vertex label")
        known = set(vertices)
        es = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise PreconditionError(f"loop at {u}")
            if u not in known or v not in known:
                raise PreconditionError(f"edge {u}-{v} uses an unknown vertex")
            es.add(frozenset((u, v)))
        return cls(vertices, frozenset(es))

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, u) -> list:
        return [v for v in self.vertices if v != u and self.adjacent(u, v)]

    def is_clique(self, vs) -> bool:
        return all(self.adjacent(u, v) for u, v in combinations(vs, 2))

    def adjacency_text(self) -> str:
        return "".join(f"{u}: {' '.join(self.neighbors(u))}".rstrip() + "\n"
                       for u in self.vertices)


def parse_graph(text: str) -> Graph:
    """Adjacency-list text, one ``u: v1 v2 ...`` line per vertex."""
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if ":" not in body:
            raise ParseError("expected 'u: v1 v2 ...'", line=lineno)
        head, tail = body.split(":", 1)
        u = head.strip()
        if not u:
            raise ParseError("missing vertex label", line=lineno)
        if u not in vertices:
            vertices.append(u)
        for v in tail.split():
            edges.append((u, v))
    for u, v in edges:
        if v not in vertices:
            vertices.append(v)
    return Graph.build(vertices, edges)

"""Pseudoline arrangements and the two reductions built on them.

An arrangement of ``n`` pseudolines (numbered from 0) is its top-to-bottom
order far to the left plus the left-to-right sequence of crossings; each
crossing swaps two pseudolines that are adjacent at that moment.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..errors import InvalidArrangementError, NonSimpleInputError, ParseError
from ..graph import Graph


@dataclass(frozen=True)
class Arrangement:
    n: int
    order: tuple      # top-to-bottom at the far left
    crossings: tuple  # (i, j) pairs, left to right

    def validate(self) -> None:
        """Raise :class:`InvalidArrangementError` unless this is an allowable sequence."""
        if sorted(self.order) != list(range(self.n)):
            raise InvalidArrangementError(f"initial order must list 0..{self.n - 1} once each")
        seen = set()
        pos = {v: k for k, v in enumerate(self.order)}
        order = list(self.order)
        for step, (i, j) in enumerate(self.crossings, start=1):
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise InvalidArrangementError(f"crossing {step}: bad pair ({i}, {j})")
            pair = frozenset((i, j))
            if pair in seen:
                raise InvalidArrangementError(f"crossing {step}: {i} and {j} already crossed")
            seen.add(pair)
            if abs(pos[i] - pos[j]) != 1:
                raise InvalidArrangementError(f"crossing {step}: {i} and {j} are not adjacent")
            a, b = sorted((pos[i], pos[j]))
            order[a], order[b] = order[b], order[a]
            pos[order[a]], pos[order[b]] = a, b
        if len(seen) != self.n * (self.n - 1) // 2:
            raise InvalidArrangementError("some pairs never cross")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidArrangementError:
            return False
        return True

    def text(self) -> str:
        lines = [str(self.n), " ".join(map(str, self.order))]
        lines += [f"{i} {j}" for i, j in self.crossings]
        return "\n".join(lines) + "\n"


def parse_arrangement(text: str) -> Arrangement:
    """Line 1 ``n``; line 2 the initial top-to-bottom order; then ``i j`` per crossing."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise ParseError("empty arrangement file")
    try:
        n = int(rows[0][1][0])
        order = tuple(int(w) for w in rows[1][1]) if n else ()
        rest = rows[2:] if n else rows[1:]
        crossings = []
        for lineno, words in rest:
            if len(words) != 2:
                raise ParseError("expected 'i j'", line=lineno)
            crossings.append((int(words[0]), int(words[1])))
    except (ValueError, IndexError):
        raise ParseError("malformed arrangement file") from None
    arr = Arrangement(n, order, tuple(crossings))
    arr.validate()
    return arr


def arrangement_from_lines(lines: list) -> Arrangement:
    """The arrangement of straight lines, read off by exact intersection abscissae."""
    slopes = []
    for k, ln in enumerate(lines):
        if ln.B == 0:
            raise NonSimpleInputError(f"line {k} is vertical")
        slopes.append((-ln.A / ln.B, -ln.C / ln.B))  # y = m*x + c
    # far to the left, a smaller slope means higher up
    order = sorted(range(len(lines)), key=lambda k: slopes[k][0])
    events = []
    for i, j in combinations(range(len(lines)), 2):
        (mi, ci), (mj, cj) = slopes[i], slopes[j]
        if mi == mj:
            raise NonSimpleInputError(f"lines {i} and {j} are parallel")
        x = (cj - ci) / (mi - mj)
        events.append((x, mi * x + ci, i, j))
    events.sort()
    for (x1, y1, *p1), (x2, y2, *p2) in zip(events, events[1:]):
        if x1 == x2:
            if y1 == y2:
                raise NonSimpleInputError(f"lines {sorted(set(p1) | set(p2))} are concurrent")
            raise NonSimpleInputError(f"crossings {tuple(p1)} and {tuple(p2)} share x = {x1}")
    pos = {v: k for k, v in enumerate(order)}
    cur = list(order)
    crossings = []
    for _, _, i, j in events:
        a, b = sorted((pos[i], pos[j]))
        crossings.append((cur[a], cur[b]))  # upper one first
        cur[a], cur[b] = cur[b], cur[a]
        pos[cur[a]], pos[cur[b]] = a, b
    arr = Arrangement(len(lines), tuple(order), tuple(crossings))
    arr.validate()
    return arr


# ---------------------------------------------------------------------------
# Cells


@dataclass(frozen=True)
class Cell:
    above: frozenset  # pseudolines this cell lies above
    below: frozenset


def arrangement_cells(arr: Arrangement) -> list:
    """Cells swept left to right: the ``n + 1`` unbounded-left ones, then one per crossing.

    A cell in the gap below position ``g - 1`` and above position ``g`` of
    the current top-to-bottom order lies above the pseudolines at
    positions ``>= g``.
    """
    arr.validate()
    order = list(arr.order)

    def cell_at(gap):
        return Cell(frozenset(order[gap:]), frozenset(order[:gap]))

    cells = [cell_at(g) for g in range(arr.n + 1)]
    pos = {v: k for k, v in enumerate(order)}
    for i, j in arr.crossings:
        a, b = sorted((pos[i], pos[j]))
        order[a], order[b] = order[b], order[a]
        pos[order[a]], pos[order[b]] = a, b
        cells.append(cell_at(b))
    return cells


def udg_instance(arr: Arrangement) -> Graph:
    """The unit-disk-graph reduction graph of an arrangement.

    Vertices ``v<i>+`` and ``v<i>-`` per pseudoline and ``c<k>`` per cell.
    All ``+`` vertices form a clique, all ``-`` vertices form a clique, all
    cell vertices form a clique; a cell is joined to ``v<i>+`` if it lies
    above pseudoline ``i`` and to ``v<i>-`` if below.
    """
    cells = arrangement_cells(arr)
    up = [f"v{i}+" for i in range(arr.n)]
    down = [f"v{i}-" for i in range(arr.n)]
    cv = [f"c{k}" for k in range(len(cells))]
    edges = list(combinations(up, 2)) + list(combinations(down, 2)) + list(combinations(cv, 2))
    for name, cell in zip(cv, cells):
        edges += [(name, up[i]) for i in sorted(cell.above)]
        edges += [(name, down[i]) for i in sorted(cell.below)]
    return Graph.build(up + down + cv, edges)


# ---------------------------------------------------------------------------
# Curve straightening


@dataclass
class CurveDescription:
    n: int                       # pseudolines after making the count odd
    arrangement: Arrangement     # the (possibly extended) arrangement
    crossings: list              # labels: ("X", i, j) or ("curl", segment, side)
    traversal: list = field(default_factory=list)  # closed walk over crossing indices
    left_pairs: list = field(default_factory=list)  # stitched segment pairs at the left
    right_pairs: list = field(default_factory=list)
    curls: int = 0
    k: int = 0

    def verify(self) -> bool:
        """Single closed walk, every crossing visited twice, ``2(n+1)`` curls, ``k = 4(n+1)``."""
        segments = self.n + 1
        parent = list(range(segments))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        degree = [0] * segments
        for a, b in self.left_pairs + self.right_pairs:
            degree[a] += 1
            degree[b] += 1
            parent[find(a)] = find(b)
        one_cycle = all(d == 2 for d in degree) and len({find(s) for s in range(segments)}) == 1
        visits = [0] * len(self.crossings)
        for c in self.traversal:
            visits[c] += 1
        curls = sum(1 for lab in self.crossings if lab[0] == "curl")
        return (one_cycle and all(v == 2 for v in visits) and curls == self.curls
                == 2 * (self.n + 1) and self.k == 4 * (self.n + 1))


def _make_odd(arr: Arrangement) -> Arrangement:
    if arr.n % 2:
        return arr
    new = arr.n
    first = tuple((new, v) for v in arr.order)  # sweeps from the top to the bottom
    return Arrangement(arr.n + 1, (new,) + arr.order, first + arr.crossings)


def curve_from_arrangement(arr: Arrangement) -> CurveDescription:
    """Closed curve whose straight representations need ``4(n+1)`` segments.

    Pseudolines plus one extra segment on top (numbered ``n``) have their
    ends stitched pairwise, consecutive in top-to-bottom order, on both
    sides; each of the ``2(n+1)`` ends carries a curl with one self-crossing.
    """
    arr.validate()
    arr = _make_odd(arr)
    n = arr.n
    top = n
    left = [top] + list(arr.order)
    right = [top] + list(reversed(arr.order))  # every pair crossed once, so the order flips
    left_pairs = [(left[k], left[k + 1]) for k in range(0, n + 1, 2)]
    right_pairs = [(right[k], right[k + 1]) for k in range(0, n + 1, 2)]

    labels = [("X", i, j) for i, j in arr.crossings]
    along = {s: [] for s in range(n + 1)}
    for idx, (i, j) in enumerate(arr.crossings):
        along[i].append(idx)
        along[j].append(idx)
    curl = {}
    for s in range(n + 1):
        for side in ("L", "R"):
            curl[(s, side)] = len(labels)
            labels.append(("curl", s, side))

    partner = {"L": {}, "R": {}}
    for side, pairs in (("L", left_pairs), ("R", right_pairs)):
        for a, b in pairs:
            partner[side][a], partner[side][b] = b, a

    walk = []
    seg, side = top, "L"  # enter the top segment at its left end
    for _ in range(n + 1):
        exit_side = "R" if side == "L" else "L"
        inner = along[seg] if side == "L" else list(reversed(along[seg]))
        walk += [curl[(seg, side)]] * 2 + inner + [curl[(seg, exit_side)]] * 2
        seg, side = partner[exit_side][seg], exit_side
    return CurveDescription(n, arr, labels, walk, left_pairs, right_pairs,
                            curls=2 * (n + 1), k=4 * (n + 1))

import random
from fractions import Fraction
from itertools import combinations

import pytest

from oracles import random_rational, slope_line_arrangement
from realct.errors import (DegeneracyError, InvalidArrangementError, NonSimpleInputError,
                           ParseError, PreconditionError)
from realct.geometry import (Arrangement, GeneralLine, Point, arrangement_cells,
                             arrangement_from_lines, artgallery_inversion_check,
                             curve_from_arrangement, inversion_gadget, multiplication_ratios_hold,
                             parse_arrangement, staudt_gadget, udg_instance)
from realct.geometry.core import parallel


def _nonzero(rng, avoid=()):
    while True:
        q = random_rational(rng, 6, 8)
        if q and q not in avoid:
            return q


# ---------------------------------------------------------------------------
# von Staudt gadgets


def test_add_parallel_one_plus_one():
    g = staudt_gadget("add", "parallel", 1, 1)
    assert g.verify() and g.output() == Point(2, 0)


def test_mul_parallel_two_times_three():
    g = staudt_gadget("mul", "parallel", 2, 3)
    assert g.verify() and g.output() == Point(6, 0)
    assert multiplication_ratios_hold(g)


def test_add_projective_example():
    g = staudt_gadget("add", "projective", Fraction(3, 2), Fraction(-1, 2))
    assert g.verify() and g.parallel == [] and g.line_inf is not None
    flat = g.straightened()
    assert flat.points["z"] == Point(1, 0)
    for (p, q), (r, s) in g.concurrent:
        assert parallel(flat.points[p], flat.points[q], flat.points[r], flat.points[s])


def test_projective_points_are_really_moved():
    g = staudt_gadget("mul", "projective", 2, 3)
    assert g.points["z"] != Point(6, 0) and g.output() == Point(6, 0)
    assert all(not g.line_inf.contains(p) for p in g.points.values())


@pytest.mark.parametrize("kind, y", [("add", 0), ("mul", 0), ("mul", 1)])
def test_degenerate_gadgets(kind, y):
    with pytest.raises(DegeneracyError):
        staudt_gadget(kind, "parallel", 2, y)


def test_unknown_gadget_names():
    with pytest.raises(PreconditionError):
        staudt_gadget("div", "parallel", 1, 2)
    with pytest.raises(PreconditionError):
        staudt_gadget("add", "affine", 1, 2)


def test_gadgets_on_a_thousand_pairs():
    rng = random.Random(37)
    for _ in range(1000):
        x = random_rational(rng, 6, 8)
        y_add = _nonzero(rng)
        y_mul = _nonzero(rng, avoid=(1,))
        for variant in ("parallel", "projective"):
            add = staudt_gadget("add", variant, x, y_add)
            mul = staudt_gadget("mul", variant, x, y_mul)
            assert add.verify() and mul.verify()
            assert add.straightened().verify() and mul.straightened().verify()
            assert add.output() == Point(x + y_add, 0)
            assert mul.output() == Point(x * y_mul, 0)
        assert multiplication_ratios_hold(staudt_gadget("mul", "parallel", x, y_mul))


# ---------------------------------------------------------------------------
# Arrangements


def test_one_line_arrangement():
    arr = arrangement_from_lines([GeneralLine(1, -1, 0)])
    assert arr.crossings == () and arr.order == (0,)


def test_three_generic_lines():
    lines = [GeneralLine(1, -1, 0), GeneralLine(-1, -1, 1), GeneralLine(Fraction(1, 2), -1, 3)]
    arr = arrangement_from_lines(lines)
    assert len(arr.crossings) == 3 and arr.is_valid()
    assert arr.order == (1, 2, 0)  # smallest slope is highest far to the left


@pytest.mark.parametrize("lines", [
    [GeneralLine(1, -1, 0), GeneralLine(2, -2, 5)],                               # parallel
    [GeneralLine(1, -1, 0), GeneralLine(-1, -1, 0), GeneralLine(2, -1, 0)],       # concurrent
    [GeneralLine(1, 0, 0)],                                                       # vertical
    [GeneralLine(0, -1, 0), GeneralLine(1, -1, 0), GeneralLine(-1, -1, 2), GeneralLine(3, -1, 2)],
])
def test_non_simple_inputs(lines):
    with pytest.raises(NonSimpleInputError):
        arrangement_from_lines(lines)


def test_invalid_sequences():
    bad = [Arrangement(3, (0, 1, 2), ((0, 2), (0, 1), (1, 2))),   # 0 and 2 not adjacent
           Arrangement(2, (0, 1), ((0, 1), (0, 1))),             # repeated pair
           Arrangement(3, (0, 1, 2), ((0, 1),)),                 # missing pairs
           Arrangement(2, (0, 0), ((0, 1),))]                    # bad initial order
    for arr in bad:
        assert not arr.is_valid()
        with pytest.raises(InvalidArrangementError):
            arr.validate()


def test_arrangement_text_round_trip():
    arr = Arrangement(3, (0, 1, 2), ((0, 1), (0, 2), (1, 2)))
    assert parse_arrangement(arr.text()) == arr
    with pytest.raises(ParseError):
        parse_arrangement("2\n0 1\n0 1 1\n")
    with pytest.raises(InvalidArrangementError):
        parse_arrangement("2\n0 1\n")


def _sign_vectors_by_sampling(lines) -> set:
    """Above-sets of all cells, found by sweeping vertical lines between crossing abscissae."""
    n = len(lines)
    slopes = [(-ln.A / ln.B, -ln.C / ln.B) for ln in lines]
    xs = sorted({(cj - ci) / (mi - mj) for (i, (mi, ci)), (j, (mj, cj))
                 in combinations(enumerate(slopes), 2)})
    samples = [xs[0] - 1, xs[-1] + 1] + [(a + b) / 2 for a, b in zip(xs, xs[1:])] if xs else [0]
    cells = set()
    for x in samples:
        heights = sorted(range(n), key=lambda k: slopes[k][0] * x + slopes[k][1])
        for gap in range(n + 1):
            cells.add(frozenset(heights[:gap]))  # lines below this cell
    return cells


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_cells_match_straight_line_geometry(n):
    rng = random.Random(41 + n)
    for _ in range(5):
        lines = slope_line_arrangement(rng, n)
        arr = arrangement_from_lines(lines)
        cells = arrangement_cells(arr)
        assert len(cells) == 1 + n + n * (n - 1) // 2
        assert {c.above for c in cells} == _sign_vectors_by_sampling(lines)
        assert all(c.above | c.below == frozenset(range(n)) for c in cells)


# ---------------------------------------------------------------------------
# Unit-disk-graph construction


def test_udg_single_pseudoline():
    g = udg_instance(Arrangement(1, (0,), ()))
    assert set(g.vertices) == {"v0+", "v0-", "c0", "c1"}
    cells = arrangement_cells(Arrangement(1, (0,), ()))
    above = f"c{[c.above for c in cells].index(frozenset({0}))}"
    below = f"c{[c.above for c in cells].index(frozenset())}"
    assert g.edges == {frozenset(e) for e in [(above, "v0+"), (below, "v0-"), ("c0", "c1")]}


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_udg_rules(n):
    rng = random.Random(43 + n)
    arr = arrangement_from_lines(slope_line_arrangement(rng, n))
    g = udg_instance(arr)
    cells = arrangement_cells(arr)
    assert len(g.vertices) == 2 * n + 1 + n + n * (n - 1) // 2
    up = [f"v{i}+" for i in range(n)]
    down = [f"v{i}-" for i in range(n)]
    assert g.is_clique(up) and g.is_clique(down)
    assert g.is_clique([f"c{k}" for k in range(len(cells))])
    for k, cell in enumerate(cells):
        for i in range(n):
            assert g.adjacent(f"c{k}", up[i]) == (i in cell.above)
            assert g.adjacent(f"c{k}", down[i]) == (i in cell.below)
    assert not any(g.adjacent(u, d) for u in up for d in down)


def test_udg_three_lines_has_thirteen_vertices():
    arr = Arrangement(3, (0, 1, 2), ((0, 1), (0, 2), (1, 2)))
    assert len(udg_instance(arr).vertices) == 13


# ---------------------------------------------------------------------------
# Curve straightening


def _walk_checks(c):
    visits = [0] * len(c.crossings)
    for idx in c.traversal:
        visits[idx] += 1
    assert visits == [2] * len(c.crossings)
    assert sum(lab[0] == "curl" for lab in c.crossings) == c.curls == 2 * (c.n + 1)
    assert c.k == 4 * (c.n + 1) and c.n % 2 == 1
    assert len(c.crossings) == c.n * (c.n - 1) // 2 + c.curls


def _arr(n, seed):
    if n == 1:
        return Arrangement(1, (0,), ())
    return arrangement_from_lines(slope_line_arrangement(random.Random(seed), n))


@pytest.mark.parametrize("n, internal, k", [(1, 1, 8), (2, 3, 16), (3, 3, 16), (5, 5, 24)])
def test_curve_counts(n, internal, k):
    c = curve_from_arrangement(_arr(n, 47 + n))
    assert (c.n, c.k) == (internal, k)
    assert c.verify()
    _walk_checks(c)


def test_curve_odd_extension_is_valid():
    c = curve_from_arrangement(Arrangement(2, (0, 1), ((0, 1),)))
    assert c.arrangement.is_valid() and c.arrangement.n == 3
    assert c.curls == 8


def test_curve_rejects_invalid_arrangement():
    with pytest.raises(InvalidArrangementError):
        curve_from_arrangement(Arrangement(2, (0, 1), ()))


# ---------------------------------------------------------------------------
# Art gallery inversion gadget


@pytest.mark.parametrize("x, y, covered", [(1, 1, True), (Fraction(1, 2), 1, False),
                                           (Fraction(2, 3), 2, True)])
def test_inversion_examples(x, y, covered):
    assert artgallery_inversion_check(x, y) is covered


def test_inversion_wall_heights():
    g = inversion_gadget(Fraction(2, 3), 2)
    assert (g.s, g.t) == (Fraction(2, 3), Fraction(1, 2))


def test_inversion_grid():
    grid = [Fraction(16 + k, 32) for k in range(49)]  # 1/2 .. 2 in steps of 1/32
    assert grid[0] == Fraction(1, 2) and grid[-1] == 2
    for x in grid:
        for y in grid:
            assert artgallery_inversion_check(x, y) == (x * y >= 1)


def test_inversion_range():
    with pytest.raises(PreconditionError):
        artgallery_inversion_check(Fraction(1, 4), 1)

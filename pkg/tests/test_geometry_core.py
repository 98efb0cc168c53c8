import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dual_crossing_order, random_rational
from realct.errors import DegeneracyError, ParseError, PreconditionError
from realct.geometry import (GeneralLine, PartialOrderType, Point, ProjectiveMap, SlopeLine,
                             check_partial_order_type, cyclic_order, dual, order_type, orient,
                             parse_lines, parse_points, projective_send_to_infinity)
from realct.geometry.core import collinear, parallel
from realct.geometry.projective import meet

coords = st.fractions(min_value=-20, max_value=20, max_denominator=9)
points = st.builds(Point, coords, coords)


def P(x, y):
    return Point(Fraction(x), Fraction(y))


# ---------------------------------------------------------------------------
# Orientation and order types


@pytest.mark.parametrize("pts, s", [(((0, 0), (1, 0), (0, 1)), 1), (((0, 0), (1, 1), (2, 2)), 0),
                                    (((0, 0), (0, 1), (1, 0)), -1)])
def test_orient_examples(pts, s):
    assert orient(*(P(*p) for p in pts)) == s


@given(points, points, points)
def test_orient_alternates(p, q, r):
    assert orient(p, q, r) == -orient(q, p, r) == orient(q, r, p)


def test_order_type_examples():
    tri = order_type([P(0, 0), P(1, 0), P(0, 1)])
    assert tri(0, 1, 2) == 1 and tri(1, 0, 2) == -1 and tri(1, 2, 0) == 1
    square = order_type([P(0, 0), P(1, 0), P(1, 1), P(0, 1)])
    assert all(square(i, (i + 1) % 4, (i + 2) % 4) == 1 for i in range(4))
    line = order_type([P(0, 0), P(1, 1), P(3, 3)])
    assert set(line.chirotope.values()) == {0}
    with pytest.raises(PreconditionError):
        order_type([P(0, 0), P(1, 1)])


def test_order_type_invariant_under_positive_affine_maps():
    rng = random.Random(5)
    for _ in range(50):
        ps = [Point(random_rational(rng), random_rational(rng)) for _ in range(6)]
        while True:
            a, b, c, d = (random_rational(rng, 3) for _ in range(4))
            if a * d - b * c > 0:
                break
        tx, ty = random_rational(rng), random_rational(rng)
        moved = [Point(a * p.x + b * p.y + tx, c * p.x + d * p.y + ty) for p in ps]
        assert order_type(moved) == order_type(ps)


def test_partial_order_type():
    ps = [P(0, 0), P(1, 0), P(0, 1), P(2, 2)]
    assert check_partial_order_type(ps, PartialOrderType(4, {}))
    own = {t: orient(*(ps[i] for i in t)) for t in combinations(range(4), 3)}
    assert check_partial_order_type(ps, PartialOrderType(4, own))
    own[(0, 1, 2)] = -own[(0, 1, 2)]
    assert not check_partial_order_type(ps, PartialOrderType(4, own))
    with pytest.raises(PreconditionError):
        PartialOrderType(3, {(0, 1, 2): 1, (1, 0, 2): 1})
    with pytest.raises(PreconditionError):
        check_partial_order_type(ps, PartialOrderType(3, {}))


# ---------------------------------------------------------------------------
# Duality


def test_dual_examples():
    assert dual(P(1, 2)) == SlopeLine(1, 2)
    assert SlopeLine(1, 2).at(5) == 3  # y = x - 2
    p = P(Fraction(3, 2), -1)
    assert dual(dual(p)) == p
    assert dual(P(1, 0)).a == dual(P(1, 5)).a == 1


def test_duality_clauses_on_ten_thousand_pairs():
    rng = random.Random(17)
    for _ in range(10_000):
        p = Point(random_rational(rng, 5, 4), random_rational(rng, 5, 4))
        line = SlopeLine(random_rational(rng, 5, 4), random_rational(rng, 5, 4))
        if rng.random() < 0.2:  # force incidences now and then
            p = Point(p.x, line.at(p.x))
        ld, pd = dual(line), dual(p)
        assert (line.side(p) == 0) == (pd.side(ld) == 0)
        assert line.side(p) == pd.side(ld)
        q = Point(p.x if rng.random() < 0.3 else random_rational(rng), random_rational(rng))
        if q != p:
            assert (p.x == q.x) == (dual(p).a == dual(q).a)


@pytest.mark.parametrize("ps, expected", [([P(1, 1)], [0])])
def test_cyclic_single(ps, expected):
    assert cyclic_order(ps, P(0, 0)) == expected


def test_cyclic_three_directions():
    # rational points at roughly 10, 100 and 200 degrees
    ps = [P(985, 174), P(-174, 985), P(-940, -342)]
    # the vertical line turns counterclockwise: 100 degrees, then 190 ~ 10, then 200
    assert cyclic_order(ps, P(0, 0)) == [1, 0, 2]


def test_cyclic_vertical_and_ties():
    ps = [P(2, 2), P(0, 5), P(1, 1), P(0, -1)]
    assert cyclic_order(ps, P(0, 0)) == [3, 1, 2, 0]
    with pytest.raises(PreconditionError):
        cyclic_order([P(0, 0)], P(0, 0))


def test_cyclic_order_matches_dual_crossings():
    rng = random.Random(23)
    for _ in range(1000):
        p = Point(random_rational(rng, 4, 3), random_rational(rng, 4, 3))
        ps = []
        while len(ps) < rng.randint(1, 8):
            q = Point(random_rational(rng, 4, 3), random_rational(rng, 4, 3))
            if q != p and q not in ps:
                ps.append(q)
        assert cyclic_order(ps, p) == dual_crossing_order(ps, p)


# ---------------------------------------------------------------------------
# Projective maps


def test_send_vertical_line_to_infinity():
    H = projective_send_to_infinity(GeneralLine(1, 0, -1))  # x = 1
    assert H.is_finite(P(0, 0))
    with pytest.raises(DegeneracyError):
        H.apply(P(1, 3))
    for hub in (P(1, 0), P(1, 5)):
        # two lines through the hub, each given by two points off x = 1
        l1 = [H.apply(P(0, hub.y - 1)), H.apply(P(2, hub.y + 1))]
        l2 = [H.apply(P(0, hub.y + 2)), H.apply(P(2, hub.y - 2))]
        assert parallel(*l1, *l2)
    # lines meeting at (0, 0), off x = 1, still meet
    m1 = [H.apply(P(0, 0)), H.apply(P(2, 2))]
    m2 = [H.apply(P(0, 0)), H.apply(P(3, -1))]
    assert not parallel(*m1, *m2)


def test_projective_preserves_collinearity_and_incidence():
    rng = random.Random(29)
    for _ in range(300):
        line = GeneralLine(random_rational(rng), random_rational(rng), random_rational(rng)) \
            if rng.random() < 0.9 else GeneralLine(0, 1, random_rational(rng))
        H = projective_send_to_infinity(line)
        p, q = (Point(random_rational(rng), random_rational(rng)) for _ in range(2))
        if p == q:
            continue
        t = random_rational(rng)
        r = Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))
        pts = (p, q, r)
        if all(H.is_finite(v) for v in pts):
            assert collinear(*(H.apply(v) for v in pts))
        inv = H.inverse()
        if H.is_finite(p):
            assert inv.apply(H.apply(p)) == p


def test_lines_meeting_on_l_become_parallel():
    rng = random.Random(31)
    for _ in range(300):
        line = GeneralLine(random_rational(rng), 1, random_rational(rng))
        H = projective_send_to_infinity(line)
        hub_x = random_rational(rng)
        hub = Point(hub_x, -(line.A * hub_x + line.C) / line.B)
        a, b = (Point(random_rational(rng), random_rational(rng)) for _ in range(2))
        if line.contains(a) or line.contains(b) or collinear(a, b, hub):
            continue
        a2 = Point(2 * a.x - hub.x, 2 * a.y - hub.y)  # second point on line hub-a
        b2 = Point(2 * b.x - hub.x, 2 * b.y - hub.y)
        if any(not H.is_finite(v) for v in (a, a2, b, b2)):
            continue
        ia, ia2, ib, ib2 = (H.apply(v) for v in (a, a2, b, b2))
        assert parallel(ia, ia2, ib, ib2)


def test_projective_map_validation():
    with pytest.raises(PreconditionError):
        ProjectiveMap(((1, 0, 0), (2, 0, 0), (0, 0, 1)))
    with pytest.raises(PreconditionError):
        GeneralLine(0, 0, 1)
    assert meet(GeneralLine(1, 0, 0), GeneralLine(2, 0, 0)) is None
    assert meet(GeneralLine(1, 0, 0), GeneralLine(1, 0, -1))[2] == 0


# ---------------------------------------------------------------------------
# Text formats


def test_parse_points_and_lines():
    assert parse_points("# c\n1/2 -3\n\n0 0\n") == [P(Fraction(1, 2), -3), P(0, 0)]
    assert parse_lines("1 -1 0\n") == [GeneralLine(1, -1, 0)]
    with pytest.raises(ParseError, match="line 2"):
        parse_points("1 1\n1 2 3\n")
    with pytest.raises(ParseError):
        parse_lines("0 0 1\n")
    with pytest.raises(ParseError):
        parse_points("a b\n")


def test_permutation_sign_table():
    ot = order_type([P(0, 0), P(3, 1), P(1, 4)])
    base = ot(0, 1, 2)
    for perm in permutations(range(3)):
        inversions = sum(perm[i] > perm[j] for i in range(3) for j in range(i + 1, 3))
        assert ot(*perm) == base * (-1) ** inversions

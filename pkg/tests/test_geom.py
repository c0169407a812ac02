import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import _pip, arc_support
from spwave.geom import (
    Arc, ConvexChainRef, GeomError, common_tangent, envelope_of_arcs, intersect_bisector_segment,
    is_convex_chain, make_bisector, on_segment, orient, point_in_polygon, strike_distance, support, tangent_from_point,
)

coord = st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


def exact_sign(a, b, c):
    F = Fraction
    det = (F(b[0]) - F(a[0])) * (F(c[1]) - F(a[1])) - (F(b[1]) - F(a[1])) * (F(c[0]) - F(a[0]))
    return (det > 0) - (det < 0)


# ---------------------------------------------------------------- orient
def test_orient_examples():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (1, 1), (2, 2)) == 0
    assert orient((0, 0), (1, 0), (2, -1e-12)) == -1


def test_orient_matches_rationals_on_near_degenerate_triples():
    rng = random.Random(5)
    for _ in range(100_000):
        a = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        b = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        u = rng.random()
        c = (a[0] + u * (b[0] - a[0]) + rng.choice((0.0, 1e-17, -1e-16)),
             a[1] + u * (b[1] - a[1]))
        assert orient(a, b, c) == exact_sign(a, b, c)


@given(point, point, point)
def test_orient_antisymmetric(a, b, c):
    assert orient(a, b, c) == -orient(b, a, c) == orient(b, c, a)


# ---------------------------------------------------------------- tangents
CHAIN = ConvexChainRef(((-1, 0), (0, 1), (1, 0)), 'ccw')


def test_tangent_examples():
    assert tangent_from_point((0, 3), CHAIN, 'left')[1] == (-1, 0)
    assert tangent_from_point((0, 3), CHAIN, 'right')[1] == (1, 0)
    with pytest.raises(GeomError, match="no tangent"):
        tangent_from_point((0, 0.5), CHAIN)


@settings(max_examples=200)
@given(st.lists(st.floats(0.1, 3.0), min_size=3, max_size=8), st.floats(0, 2 * math.pi),
       st.floats(3.5, 20), st.sampled_from(['left', 'right']))
def test_tangent_one_sided(radii_unused, ang, far, side):
    n = len(radii_unused)
    verts = [(math.cos(math.pi * i / (n - 1)), math.sin(math.pi * i / (n - 1))) for i in range(n)]
    p = (far * math.cos(ang), far * math.sin(ang))
    i, v = tangent_from_point(p, verts, side)
    signs = {orient(p, v, w) for w in verts} - {0}
    assert len(signs) <= 1


# ---------------------------------------------------------------- bridges
def test_common_tangent_points():
    br = common_tangent([(0, 0)], [(2, 0)])
    assert br.a == (0, 0) and br.b == (2, 0)


def test_common_tangent_equal_arcs():
    br = common_tangent([(0, 0)], [(10, 0)], 1.0, 1.0)
    assert br.a == pytest.approx((0, 1), abs=1e-12)
    assert br.b == pytest.approx((10, 1), abs=1e-12)


def test_common_tangent_unequal_arcs_residual():
    br = common_tangent([(0, 0)], [(4, 0)], 1.0, 2.0)
    a, b = br.a, br.b
    L = math.dist(a, b)
    nx, ny = -(b[1] - a[1]) / L, (b[0] - a[0]) / L  # outward normal; both discs lie on the right
    h = nx * a[0] + ny * a[1]
    # tangent to both circles: each center sits exactly its radius inside the line
    assert abs((h - (nx * 0 + ny * 0)) - 1.0) < 1e-9
    assert abs((h - (nx * 4 + ny * 0)) - 2.0) < 1e-9
    for t in range(360):
        th = math.radians(t)
        for c, r in (((0, 0), 1.0), ((4, 0), 2.0)):
            q = (c[0] + r * math.cos(th), c[1] + r * math.sin(th))
            assert nx * q[0] + ny * q[1] <= h + 1e-9


@settings(max_examples=100)
@given(st.lists(point, min_size=1, max_size=5), st.lists(point, min_size=1, max_size=5))
def test_bridge_supports_both_hulls(A, B):
    br = common_tangent(A, B)
    if br.a is None or br.a == br.b:
        return
    for q in A + B:
        assert orient(br.a, br.b, q) <= 0 or \
            abs((br.b[0] - br.a[0]) * (q[1] - br.a[1]) - (br.b[1] - br.a[1]) * (q[0] - br.a[0])) < 1e-6


# ---------------------------------------------------------------- bisectors
def test_bisector_examples():
    b = make_bisector(((0, 0), 0), ((2, 0), 0))
    assert b.kind == 'line'
    for tau in (-3, 0, 2.5):
        assert b.point(tau)[0] == pytest.approx(1.0)
    h = make_bisector(((0, 0), 0), ((2, 0), 1))
    assert h.kind == 'hyperbola-branch'
    assert h.point(0.0) == pytest.approx((1.5, 0.0))
    with pytest.raises(GeomError, match="empty bisector"):
        make_bisector(((0, 0), 0), ((2, 0), 3))


@settings(max_examples=200)
@given(point, st.floats(0, 50), point, st.floats(0, 50))
def test_bisector_equidistant(a, wa, b, wb):
    L = math.dist(a, b)
    if L < 1e-3 or abs(wa - wb) >= 0.99 * L:
        return
    bis = make_bisector((a, wa), (b, wb))
    for i in range(100):
        tau = -5 + i * 0.1
        p = bis.point(tau)
        scale = 1.0 + math.dist(p, a)
        assert abs((wa + math.dist(p, a)) - (wb + math.dist(p, b))) < 1e-9 * scale


def test_intersect_bisector_segment_examples():
    line = make_bisector(((0, 0), 0), ((2, 0), 0))
    assert intersect_bisector_segment(line, ((0, 2), (3, 2))) == pytest.approx((1, 2))
    assert intersect_bisector_segment(line, ((2, 0), (3, 0))) is None
    hyp = make_bisector(((0, 0), 0), ((2, 0), 1))
    assert intersect_bisector_segment(hyp, ((1.5, -1), (1.5, 1))) == pytest.approx((1.5, 0), abs=1e-12)


def test_strike_distance_examples():
    assert strike_distance(((0, 0), 0), (3, 4)) == 5
    assert strike_distance(((0, 0), 2), ((5, -1), (5, 1))) == 7
    assert strike_distance(((1, 1), 0.5), ((4, 0), (4, 8))) == 3.5


# ---------------------------------------------------------------- envelopes
@settings(max_examples=100)
@given(st.lists(st.tuples(point, st.floats(0, 3), st.floats(0, 6.28), st.floats(0.1, 6.28)),
                min_size=1, max_size=6), st.floats(3, 6))
def test_envelope_support_matches_pointwise_max(raw, d):
    arcs = [Arc(c, w, lo, sp) for c, w, lo, sp in raw]
    env = envelope_of_arcs(arcs, d)
    thetas = [2 * math.pi * i / 97 for i in range(97)]
    ref = arc_support([(a.center, a.weight, a.lo, a.span) for a in arcs], d, thetas)
    for t, r in zip(thetas, ref):
        assert support(env, t) == pytest.approx(r, abs=1e-7)


def test_convex_chain_check():
    assert is_convex_chain([(0, 0), (1, 1), (2, 1.5), (3, 1.6)])
    assert not is_convex_chain([(0, 0), (1, 1), (2, 0), (3, 1)])


def test_envelope_with_tangent_touch():
    # a zero-span arc whose tip lies on a neighbouring arc's circle
    a0 = Arc((8.51224819100915, 7.401179473494328), 0.7029928831400891, 2.166547749146125, 0.0)
    a1 = Arc((7.973222547872297, 8.196299001854168), 1.6635987900229647, 0.5957514223512286, math.pi)
    d = 4.9518585083675655
    from spwave.geom import merge_envelopes, envelope_of_pieces
    env = merge_envelopes(envelope_of_pieces(a0.pieces(d)), envelope_of_pieces(a1.pieces(d)))
    thetas = [2 * math.pi * i / 180 for i in range(180)]
    ref = arc_support([(a.center, a.weight, a.lo, a.span) for a in (a0, a1)], d, thetas)
    for t, r in zip(thetas, ref):
        assert support(env, t) == pytest.approx(r, abs=1e-9)


# ---------------------------------------------------- point location


def exact_on_segment(p, a, b):
    F = Fraction
    if exact_sign(a, b, p):
        return False
    return all(min(F(a[i]), F(b[i])) <= F(p[i]) <= max(F(a[i]), F(b[i])) for i in (0, 1))


@settings(max_examples=300, deadline=None)
@given(point, point, st.floats(min_value=-0.5, max_value=1.5), st.sampled_from([0.0, 1e-9, 0.3]))
def test_on_segment_matches_rationals(a, b, u, off):
    p = (a[0] + u * (b[0] - a[0]) + off, a[1] + u * (b[1] - a[1]))
    assert on_segment(p, a, b) == exact_on_segment(p, a, b)


STAR = [(0, 0), (4, 0), (4, 3), (2, 1), (0, 3)]


def _seg_dist(p, a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    u = max(0.0, min(1.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)))
    return math.hypot(p[0] - a[0] - u * dx, p[1] - a[1] - u * dy)


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=-1, max_value=5), st.floats(min_value=-1, max_value=4))
def test_point_in_polygon_matches_ray_parity(x, y):
    p = (x, y)
    got = point_in_polygon(p, STAR)
    if any(exact_on_segment(p, STAR[i], STAR[(i + 1) % 5]) for i in range(5)):
        assert got == 0
    elif min(_seg_dist(p, STAR[i], STAR[(i + 1) % 5]) for i in range(5)) > 1e-9:
        assert got == (1 if _pip(p, STAR) else -1)


@pytest.mark.parametrize("p,want", [((2, 0), 0), ((2, 1), 0), ((3, 2), 0), ((2, 2), -1), ((1, 0.5), 1)])
def test_point_in_polygon_boundary_cases(p, want):
    assert point_in_polygon(p, STAR) == want

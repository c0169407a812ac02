import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import arc_support, first_bisector_hit
from scenarios import bht_replay, chain_len, convex_chain, hull_fuzz, iintersect_case, random_bunch
from spwave.geom import TAU, Arc, hull_vertices, make_bisector, support
from spwave.hulltrees import (
    BHT, BST, WST, ArcLeaf, HullTree, HullTreeError, PointsLeaf, StrikeAction, brute_min_strike,
    bht_tangent_strike, bst_min_dist, iintersect, min_strike, wst_min_dist,
)

DOOR = PointsLeaf([(5, -1), (5, 1)], tag='door', key=0)


def one_site_bunch(order=0):
    b = BHT([(0.0, 0.0)], 0, 0.0, cones=[(0.0, TAU)])
    b.order = order
    return b


# -------------------------------------------------------------------- BHT

def test_build_wpupdate_example():
    b = BHT([(0, 0), (1, 0), (1.5, 0.5)], 0, 5.0)
    assert b.wpupdate() == pytest.approx([0.0, -1.0, -(1 + math.sqrt(0.5))], abs=1e-15)
    assert b.root_wpupdate() == 0.0
    assert not b.valid(1, 6.0) and b.valid(1, 6.0 + 1e-9)
    assert b.valid_leaves(5.5) == [0]


def test_single_vertex_chain():
    b = BHT([(3, 3)], 0, 1.0)
    assert len(b) == 1 and b.indices == [0]


def test_split_at_first_leaf_reroots_everything():
    b = BHT([(0, 0), (1, 0), (2, 0.2)], 0, 0.0)
    left, right = b.split(0)
    assert len(left) == 0 and right.indices == [0, 1, 2]


def test_split_eight_leaves_keeps_validity():
    rng = random.Random(1)
    chain = convex_chain(rng, 8)
    b = BHT(chain, 0, 2.0)
    probes = [2.0 + 0.37 * i for i in range(60)]
    before = {(k, d): b.valid(k, d) for k in range(8) for d in probes}
    left, right = b.split(3)
    assert left.indices == [0, 1, 2] and right.indices == [3, 4, 5, 6, 7]
    assert right.shortestdist == pytest.approx(2.0 + chain_len(chain, 0, 3))
    assert right.split_flag and right.tangentstart == 3
    for (k, d), v in before.items():
        assert (left if k < 3 else right).valid(k, d) == v
    assert left.tree.check_balanced() and right.tree.check_balanced()


@pytest.mark.parametrize("n", [2, 5, 8, 16, 33, 64, 128])
def test_split_rewrites_logarithmic(n):
    chain = [(math.cos(i / n), math.sin(i / n)) for i in range(n)]
    for k in range(n):
        b = BHT(chain, 0, 0.0)
        b.tree.split(k)
        assert b.tree.op_rewrites['split'][-1] <= 2 * math.ceil(math.log2(n)) + 2


def test_resplits_are_counted_not_assumed_zero():
    items = [PointsLeaf([(float(i), 0.0)], tag=i, key=i) for i in range(32)]
    t = HullTree(items)
    t.split(7)
    assert t.resplits == 0
    t = HullTree(items)
    t.concat(t.split(11))
    assert t.resplits == 0
    # cutting again at the old seam meets only the fresh concat node
    t.concat(t.split(11))
    assert t.resplits == 0
    # a nearby cut passes through connectors the first split rebuilt
    t.concat(t.split(13))
    assert t.resplits > 0
    assert len(t) == 32


def test_split_out_of_range():
    b = BHT([(0, 0), (1, 0), (2, 0.2)], 1, 0.0)
    with pytest.raises(HullTreeError, match="k out of range"):
        b.split(0)


def test_tangent_strike_cases():
    chain = [(0, 0), (1, 0), (2, 0.3), (3, 0.9)]
    bunches = []
    case, nb, _ = bht_tangent_strike(bunches, chain, 1, 1.0)
    assert case == StrikeAction.BUILD and nb.indices == [1, 2, 3]
    # v_2 is reached by the chain wave at 1 + |v1 v2|
    case, _, _ = bht_tangent_strike(bunches, chain, 2, 3.0)
    assert case == StrikeAction.VALID and len(bunches) == 1
    case, _, _ = bht_tangent_strike(bunches, chain, 0, 3.5)
    assert case == StrikeAction.DOWNSTREAM


def test_tangent_strike_on_invalid_leaf_splits():
    chain = [(0, 0), (1, 0), (2, 0.3), (3, 0.9), (4, 1.8)]
    bunches = []
    bht_tangent_strike(bunches, chain, 0, 0.0)
    old = bunches[0]
    n_old = len(old)
    case, nb, removed = bht_tangent_strike(bunches, chain, 2, 1.5)
    assert case == StrikeAction.SPLIT and removed == [old]
    assert nb.indices == [2, 3, 4] and nb.split_flag and nb.shortestdist == 1.5
    assert n_old == len(old) + len(nb)
    assert bunches == [nb]
    assert nb.valid(2, 1.5 + 1e-9) and not nb.valid(3, 1.5 + chain_len(chain, 2, 3))


@pytest.mark.parametrize("seed", range(200))
def test_validity_matches_chronological_replay(seed):
    assert bht_replay(random.Random(seed)) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 10))
def test_intra_bunch_curves_diverge(seed, n):
    rng = random.Random(seed)
    chain = convex_chain(rng, n)
    b = BHT(chain, 0, rng.uniform(0, 5))
    arcs = b.arcs()
    for (q, dvec), a, c in zip(b.icurves(), arcs, arcs[1:]):
        # consecutive segments are separated by the ray extending their edge
        L = math.hypot(*dvec)
        for s in (0.5, 2.0, 10.0):
            p = (q[0] + s * dvec[0] / L, q[1] + s * dvec[1] / L)
            assert a.weight + math.dist(p, a.center) == pytest.approx(c.weight + math.dist(p, c.center), abs=1e-9)
    rays = b.icurves()
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            (p, u), (q, v) = rays[i], rays[j]
            lu, lv = math.hypot(*u), math.hypot(*v)
            gaps = [math.dist((p[0] + s * u[0] / lu, p[1] + s * u[1] / lu),
                              (q[0] + s * v[0] / lv, q[1] + s * v[1] / lv)) for s in (1, 4, 16, 64)]
            assert all(g2 >= g1 - 1e-9 for g1, g2 in zip(gaps, gaps[1:]))


# ------------------------------------------------------------ WST / BST

def test_insert_into_empty_wst():
    w = WST()
    w.insert_ordered(one_site_bunch())
    assert len(w) == 1 and w.height() == 0


def test_insert_then_delete_restores_hull():
    rng = random.Random(4)
    w = WST([random_bunch(rng, i) for i in range(5)])
    d = 7.0
    before = [(tag, round(a, 9), round(b, 9)) for tag, a, b in hull_vertices(w.envelope(d))]
    extra = random_bunch(rng, 2.5)
    w.insert_ordered(extra)
    w.delete([it.order for it in w.items()].index(2.5))
    after = [(tag, round(a, 9), round(b, 9)) for tag, a, b in hull_vertices(w.envelope(d))]
    assert after == before


def test_order_violation():
    w = WST([one_site_bunch(0), one_site_bunch(5)])
    with pytest.raises(HullTreeError, match="order violation"):
        w.insert(0, one_site_bunch(7))
    with pytest.raises(HullTreeError, match="order violation"):
        w.insert_ordered(one_site_bunch(5))
    with pytest.raises(HullTreeError, match="order violation"):
        WST([one_site_bunch(3), one_site_bunch(1)])
    other = WST([one_site_bunch(1)])
    with pytest.raises(HullTreeError, match="order violation"):
        w.concat(other)


@pytest.mark.parametrize("seed", range(120))
def test_random_op_sequences(seed):
    assert hull_fuzz(random.Random(seed)) == []


def test_lazy_delete_leaves_dirty_superset():
    rng = random.Random(9)
    w = WST([random_bunch(rng, i) for i in range(8)])
    d = 9.0
    w.envelope(d)
    w.delete(3, lazy=True)
    if w.dirty_count():
        dirty = w.envelope(d, allow_dirty=True)
        fresh = w.refresh(d)
        assert w.dirty_count() == 0
        for i in range(90):
            t = TAU * i / 90
            assert support(dirty, t) >= support(fresh, t) - 1e-9


def test_offset_is_radial_advance():
    w = WST([one_site_bunch(0)])
    e1 = w.envelope(3.0)
    w.add_offset(-1.0)
    e2 = w.envelope(2.0)
    assert support(e1, 0.3) == pytest.approx(support(e2, 0.3))


def test_bridges_support_children():
    rng = random.Random(2)
    w = WST([random_bunch(rng, i) for i in range(6)])
    d = 8.0
    env = w.envelope(d)
    for depth, segs, dirty in w.bridges(d, allow_dirty=False):
        for p, q in segs:
            # the bridge endpoints lie on the hull boundary
            for x in (p, q):
                assert max(x[0] * math.cos(t) + x[1] * math.sin(t) - support(env, t)
                           for t in [TAU * i / 360 for i in range(360)]) <= 1e-7


def test_dump_is_json():
    rng = random.Random(3)
    w = WST([random_bunch(rng, i) for i in range(4)])
    json.dumps(w.dump(6.0))


# ------------------------------------------------------- shortest distances

def test_min_dist_door_examples():
    delta, (arc, elem, pt) = bst_min_dist(BST([DOOR], key=lambda e: e.key), one_site_bunch(), 0.0)
    assert delta == 5.0 and pt == (5.0, 0.0) and elem is DOOR
    delta, _ = wst_min_dist(WST([one_site_bunch()]), DOOR, 0.0)
    assert delta == 5.0
    assert min_strike(ArcLeaf(Arc((0, 0), 0.0)), DOOR, 0.0)[0] == 5.0


def test_empty_structures_give_none():
    assert min_strike(WST(), DOOR, 0.0) == (math.inf, None)
    assert bst_min_dist(BST(key=lambda e: e.key), one_site_bunch(), 0.0) == (math.inf, None)


def test_strike_inside_hull_is_zero():
    assert wst_min_dist(WST([one_site_bunch()]), DOOR, 10.0)[0] == 0.0


def test_invalid_nearer_segment_is_ignored():
    b = BHT([(0, 0), (10, 0)], 0, 0.0, cones=[(0.0, TAU), (0.0, TAU)])
    door = PointsLeaf([(9, 3), (11, 3)], tag='near-tip')
    delta, (_, _, pt) = min_strike(b, door, 1.0)
    # the tip segment would reach the door after 3 more units if it were valid
    assert delta == pytest.approx(math.sqrt(90) - 1.0) and pt == pytest.approx((9, 3))


def _sampled_strike(arcs, elements, d, k=4000):
    best = math.inf
    for a in arcs:
        if d < a.weight:
            continue
        for el in elements:
            for P, Q in el.segments():
                for i in range(k + 1):
                    u = i / k
                    x = (P[0] + u * (Q[0] - P[0]), P[1] + u * (Q[1] - P[1]))
                    t = math.atan2(x[1] - a.center[1], x[0] - a.center[0]) % TAU
                    if a.full() or (t - a.lo) % TAU <= a.span + 1e-12 or math.dist(x, a.center) < 1e-12:
                        best = min(best, a.weight + math.dist(x, a.center) - d)
    return max(0.0, best)


@pytest.mark.parametrize("seed", range(25))
def test_min_strike_matches_brute(seed):
    rng = random.Random(seed)
    bunches = [random_bunch(rng, i) for i in range(rng.randint(1, 3))]
    w = WST(bunches)
    elems = [PointsLeaf(convex_chain(rng, rng.randint(1, 3)), tag=i, key=i) for i in range(rng.randint(1, 3))]
    d = rng.uniform(3.0, 6.0)
    got, wit = min_strike(w, elems, d)
    arcs = [a for b in bunches for a in b.arcs()]
    exact, _ = brute_min_strike(arcs, elems, d)
    assert got == pytest.approx(exact, abs=1e-9)
    sampled = _sampled_strike(arcs, elems, d, k=2000)
    if math.isinf(sampled):
        assert math.isinf(got) and wit is None
    else:
        assert got <= sampled + 1e-9 and sampled - got < 0.05


# ------------------------------------------------------------- iintersect

def test_iintersect_example():
    bis = make_bisector(((0, 0), 0), ((2, 0), 0))
    el, p = iintersect(bis, [[(-1, 2), (3, 2)], [(0, -1), (3, -1)]])
    assert p == pytest.approx((1, -1))
    assert iintersect(bis, [[(5, 5), (6, 6)]]) is None


@pytest.mark.parametrize("seed", range(150))
def test_iintersect_matches_sampled_root_finding(seed):
    assert iintersect_case(random.Random(seed)) == []


def test_iintersect_hyperbola_against_oracle():
    a, wa, b, wb = (0, 0), 0.0, (4, 0), 1.5
    bis = make_bisector((a, wa), (b, wb))
    seq = [[(0, 3), (4, 3)], [(3, -5), (3, 5)]]
    _, p = iintersect(bis, seq)
    ref = first_bisector_hit(a, wa, b, wb, [((0, 3), (4, 3)), ((3, -5), (3, 5))])
    assert p == pytest.approx(ref, abs=1e-7)


def test_hull_tree_items_round_trip():
    items = [PointsLeaf([(i, 0)], tag=i) for i in range(9)]
    t = HullTree(items)
    other = t.split(4)
    assert [x.tag for x in t.items()] == [0, 1, 2, 3]
    t.concat(other)
    assert [x.tag for x in t.items()] == list(range(9)) and len(other) == 0
    assert arc_support([((0, 0), 0, 0, TAU)], 1.0, [0.0])[0] == 1.0

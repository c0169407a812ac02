import math
import random

import pytest

from conftest import _on_boundary, _orient, _pip
from spwave.domain import fixture, make_instance, random_instance
from spwave.oracle import OracleError, oracle_distance, path_is_valid, path_length, visibility_graph
from spwave.triangulate import triangulate

SQUARE_HOLE = 1 + 2 * math.sqrt(2.5)


def segment_free(inst, a, b):
    """Closed segment ab avoids hole interiors and the outer exterior."""
    for p, q in inst.edges():
        if _orient(a, b, p) * _orient(a, b, q) < 0 and _orient(p, q, a) * _orient(p, q, b) < 0:
            return False
    for s in (0.25, 0.5, 0.75):
        x = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
        outer = _pip(x, list(inst.outer)) or _on_boundary(x, list(inst.outer))
        if not outer or any(_pip(x, list(h)) and not _on_boundary(x, list(h)) for h in inst.holes):
            return False
    return True


def test_free_space():
    inst = fixture("free")
    d, path = oracle_distance(inst)
    assert d == 4.0 and path == [(-2.0, 0.0), (2.0, 0.0)]


def test_square_hole_distance_and_visibility():
    inst = fixture("square-hole")
    d, path = oracle_distance(inst)
    assert d == pytest.approx(SQUARE_HOLE, abs=1e-12)
    g = visibility_graph(inst)
    s = len(g.nodes) - 2
    idx = {tuple(p): i for i, p in enumerate(g.nodes)}
    assert g.has_edge(s, idx[(-0.5, 0.5)]) and g.has_edge(s, idx[(-0.5, -0.5)])
    assert not g.has_edge(s, idx[(0.5, 0.5)]) and not g.has_edge(s, idx[(0.5, -0.5)])


def test_graph_shape():
    inst = random_instance(2, 4)
    g = visibility_graph(inst)
    assert len(g.nodes) == inst.n + 2
    for u in range(len(g.nodes)):
        for v in g.adj[u]:
            assert u in g.adj[v] and g.adj[u][v] == g.adj[v][u]


@pytest.mark.parametrize("seed", range(8))
def test_edges_match_brute_visibility(seed):
    inst = random_instance(seed, 1 + seed % 4, 5)
    g = visibility_graph(inst)
    N = len(g.nodes)
    for u in range(N):
        for v in range(u + 1, N):
            if g.nodes[u] == g.nodes[v]:
                continue
            assert g.has_edge(u, v) == segment_free(inst, g.nodes[u], g.nodes[v]), (u, v)


@pytest.mark.parametrize("seed", range(10))
def test_shorter_than_random_free_polylines(seed):
    inst = random_instance(seed, 3)
    d, _ = oracle_distance(inst)
    rng = random.Random(seed)
    tried = 0
    while tried < 30:
        pts = [inst.s] + [(rng.uniform(0, 100), rng.uniform(0, 100)) for _ in range(rng.randint(1, 3))] + [inst.t]
        if all(segment_free(inst, a, b) for a, b in zip(pts, pts[1:])):
            assert d <= path_length(pts) + 1e-9
        tried += 1


def test_rigid_motion_and_scaling():
    inst = fixture("two-holes")
    d0, _ = oracle_distance(inst)
    c, s = math.cos(0.7), math.sin(0.7)

    def move(p, k=1.0):
        return (k * (c * p[0] - s * p[1]) + 3.0, k * (s * p[0] + c * p[1]) - 1.0)

    for k in (1.0, 3.0):
        moved = make_instance([move(p, k) for p in inst.outer], [[move(p, k) for p in h] for h in inst.holes],
                              move(inst.s, k), move(inst.t, k))
        assert oracle_distance(moved)[0] == pytest.approx(k * d0, rel=1e-9)


@pytest.mark.parametrize("name", ["square-hole", "two-holes", "comb", "ring", "nonconvex-hole"])
def test_path_taut_and_valid(name):
    inst = fixture(name)
    d, path = oracle_distance(inst)
    assert path_is_valid(inst, path)
    assert path_length(path) == pytest.approx(d)
    tri = triangulate(inst)
    idx = {p: i for i, p in enumerate(tri.vertices)}
    for p in path[1:-1]:
        assert tri.reflex[idx[p]]


def test_disconnected_error():
    inst = make_instance([(0, 0), (4, 0), (4, 4), (0, 4)], [], (1, 1), (3, 3))
    g = visibility_graph(inst)
    g.adj[len(g.nodes) - 2].clear()
    for u in range(len(g.nodes)):
        g.adj[u].pop(len(g.nodes) - 2, None)
    with pytest.raises(OracleError, match="disconnected"):
        oracle_distance(inst, graph=g)


def test_invalid_path_rejected():
    inst = fixture("square-hole")
    assert not path_is_valid(inst, [inst.s, inst.t])

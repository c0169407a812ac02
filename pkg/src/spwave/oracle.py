"""Ground truth: naive visibility graph + Dijkstra.

Deliberately independent from the triangulation and the wavefront engine.
Only the exact orientation predicate is shared.
"""
import heapq
import math

import numpy as np

from .geom import orient, on_segment, point_in_polygon


class OracleError(RuntimeError):
    pass


class VisGraph:
    def __init__(self, nodes, adj):
        self.nodes = nodes
        self.adj = adj  # node -> {other: weight}

    def edge_count(self):
        return sum(len(v) for v in self.adj.values()) // 2

    def has_edge(self, u, v):
        return v in self.adj[u]


def _free(inst, p):
    """Closed free space membership (boundary counts as free)."""
    if point_in_polygon(p, inst.outer) < 0:
        return False
    return all(point_in_polygon(p, h) <= 0 for h in inst.holes)


def visibility_graph(inst):
    polys = [list(inst.outer)] + [list(h) for h in inst.holes]
    nodes = [tuple(p) for poly in polys for p in poly] + [tuple(inst.s), tuple(inst.t)]
    N = len(nodes)
    E0, E1, obst, eid = [], [], set(), []
    base = 0
    for poly in polys:
        k = len(poly)
        for i in range(k):
            E0.append(poly[i])
            E1.append(poly[(i + 1) % k])
            eid.append((base + i, base + (i + 1) % k))
            obst.add((base + i, base + (i + 1) % k))
            obst.add((base + (i + 1) % k, base + i))
        base += k
    E0, E1 = np.asarray(E0, float), np.asarray(E1, float)
    P = np.asarray(nodes, float)
    iu, ju = np.triu_indices(N, 1)
    A, B = P[iu], P[ju]
    scale = max(1.0, float(np.abs(P).max()))
    tol = 1e-10 * scale * scale
    eid = np.asarray(eid)
    # edges sharing an endpoint with the candidate segment cannot cross it
    incident = ((eid[None, :, 0] == iu[:, None]) | (eid[None, :, 1] == iu[:, None])
                | (eid[None, :, 0] == ju[:, None]) | (eid[None, :, 1] == ju[:, None]))

    def orient_f(a, b, c):
        return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])

    # proper crossings, pairs x edges
    o1 = orient_f(A[:, None, :], B[:, None, :], E0[None, :, :])
    o2 = orient_f(A[:, None, :], B[:, None, :], E1[None, :, :])
    o3 = orient_f(E0[None, :, :], E1[None, :, :], A[:, None, :])
    o4 = orient_f(E0[None, :, :], E1[None, :, :], B[:, None, :])
    sure = (o1 * o2 < 0) & (o3 * o4 < 0) & (np.abs(o1) > tol) & (np.abs(o2) > tol) & (np.abs(o3) > tol) & (np.abs(o4) > tol)
    sure &= ~incident
    unsure = ~sure & ~incident & (np.minimum.reduce([np.abs(o1), np.abs(o2), np.abs(o3), np.abs(o4)]) <= tol)
    blocked = sure.any(axis=1)
    # vertices lying close to the open segment
    ow = orient_f(A[:, None, :], B[:, None, :], P[None, :, :])
    d = B - A
    tproj = ((P[None, :, 0] - A[:, None, 0]) * d[:, None, 0] + (P[None, :, 1] - A[:, None, 1]) * d[:, None, 1])
    L2 = (d * d).sum(axis=1)[:, None]
    near = (np.abs(ow) <= tol) & (tproj > 0) & (tproj < L2)
    adj = {i: {} for i in range(N)}
    cand = np.nonzero(~blocked)[0]
    slow = unsure[cand].any(axis=1) | near[cand].any(axis=1)
    fast = cand[~slow]
    # midpoint test for the easy pairs: odd crossing count over all edges
    M = 0.5 * (A[fast] + B[fast])
    ey0, ey1 = E0[None, :, 1], E1[None, :, 1]
    cond = (ey0 > M[:, None, 1]) != (ey1 > M[:, None, 1])
    with np.errstate(divide='ignore', invalid='ignore'):
        xi = E0[None, :, 0] + (M[:, None, 1] - ey0) * (E1[None, :, 0] - E0[None, :, 0]) / (ey1 - ey0)
    parity = (cond & (M[:, None, 0] < xi)).sum(axis=1) % 2 == 1
    ed = E1 - E0
    el2 = np.maximum((ed * ed).sum(axis=1), 1e-300)
    tt = np.clip(((M[:, None, 0] - E0[None, :, 0]) * ed[None, :, 0] + (M[:, None, 1] - E0[None, :, 1]) * ed[None, :, 1]) / el2[None, :], 0.0, 1.0)
    cx = E0[None, :, 0] + tt * ed[None, :, 0] - M[:, None, 0]
    cy = E0[None, :, 1] + tt * ed[None, :, 1] - M[:, None, 1]
    close = (cx * cx + cy * cy).min(axis=1) <= 1e-18 * scale * scale
    verdict = {}
    for idx, k in enumerate(fast):
        u, v = int(iu[k]), int(ju[k])
        if (u, v) in obst or close[idx]:
            slow_k = True
        else:
            slow_k = False
            verdict[int(k)] = bool(parity[idx])
        if slow_k:
            verdict[int(k)] = None
    for k in cand:
        k = int(k)
        ok = verdict.get(k)
        if ok is None:
            ok = _slow_visible(inst, nodes, int(iu[k]), int(ju[k]), obst, E0, E1, unsure[k], near[k], tproj[k], L2[k, 0])
        if ok:
            u, v = int(iu[k]), int(ju[k])
            a, b = nodes[u], nodes[v]
            w = math.hypot(a[0] - b[0], a[1] - b[1])
            adj[u][v] = w
            adj[v][u] = w
    return VisGraph(nodes, adj)


def _slow_visible(inst, nodes, u, v, obst, E0, E1, unsure_row, near_row, tproj_row, l2):
    a, b = nodes[u], nodes[v]
    if (u, v) in obst:
        return True
    for e in np.nonzero(unsure_row)[0]:
        p, q = tuple(E0[e]), tuple(E1[e])
        if (orient(a, b, p) * orient(a, b, q) < 0) and (orient(p, q, a) * orient(p, q, b) < 0):
            return False
    # split at collinear vertices; each piece must lie in free space
    cuts = [0.0, 1.0]
    for w in np.nonzero(near_row)[0]:
        if w in (u, v):
            continue
        if orient(a, b, nodes[w]) == 0 and on_segment(nodes[w], a, b):
            cuts.append(float(tproj_row[w] / l2))
    cuts.sort()
    for c0, c1 in zip(cuts, cuts[1:]):
        m = 0.5 * (c0 + c1)
        mid = (a[0] + m * (b[0] - a[0]), a[1] + m * (b[1] - a[1]))
        if not _free(inst, mid):
            return False
    return True


def oracle_distance(inst, graph=None):
    """(distance, path) in the instance's original units."""
    g = graph or visibility_graph(inst)
    N = len(g.nodes)
    src, dst = N - 2, N - 1
    dist = [math.inf] * N
    pred = [-1] * N
    dist[src] = 0.0
    heap = [(0.0, src)]
    done = [False] * N
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == dst:
            break
        for v, w in g.adj[u].items():
            nd = du + w
            if nd < dist[v] or (nd == dist[v] and u < pred[v]):
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    if not math.isfinite(dist[dst]):
        raise OracleError("disconnected")
    path = [dst]
    while path[-1] != src:
        path.append(pred[path[-1]])
    path.reverse()
    f = inst.scale
    return dist[dst] * f, [(g.nodes[i][0] * f, g.nodes[i][1] * f) for i in path]


def path_is_valid(inst, path, tol=1e-9):
    """No segment of the path leaves the (closed) free space."""
    f = inst.scale
    pts = [(p[0] / f, p[1] / f) for p in path]
    if math.hypot(pts[0][0] - inst.s[0], pts[0][1] - inst.s[1]) > tol or \
            math.hypot(pts[-1][0] - inst.t[0], pts[-1][1] - inst.t[1]) > tol:
        return False
    edges = inst.edges()
    for a, b in zip(pts, pts[1:]):
        for p, q in edges:
            if (orient(a, b, p) * orient(a, b, q) < 0) and (orient(p, q, a) * orient(p, q, b) < 0):
                return False
        for s in range(1, 8):
            m = s / 8.0
            x = (a[0] + m * (b[0] - a[0]), a[1] + m * (b[1] - a[1]))
            if not _free(inst, x):
                # tolerate float noise on boundary-hugging segments
                if _boundary_dist(inst, x) > tol:
                    return False
    return True


def _boundary_dist(inst, p):
    from .geom import dist_point_segment
    return min(dist_point_segment(p, a, b) for a, b in inst.edges())


def path_length(path):
    return sum(math.hypot(b[0] - a[0], b[1] - a[1]) for a, b in zip(path, path[1:]))

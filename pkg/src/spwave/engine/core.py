"""Exact wavefront propagation over the triangulation.

The wavefront is carried by *windows*: a generator (an obstacle vertex or
s) with its geodesic distance as weight, plus an interval of a triangle
edge that the generator sees straight through the triangles already
crossed.  A window is keyed by the smallest distance it realises on its
interval, so popping windows in key order sweeps the wavefront outward.

When a window is processed it is first clipped against the windows
already processed on the same directed edge (pointwise minimum of the
two distance functions), then pushed through the next triangle.
Vertices reached by a window get a distance candidate; obstacle vertices
with free-space angle above pi become new generators.
"""
from math import hypot, inf

from ..geom import orient, bisector_line_roots


class Window:
    __slots__ = ('g', 'ver', 'gx', 'gy', 'w', 'p', 'q', 't0', 't1', 'tri', 'key')

    def __init__(self, g, ver, gx, gy, w, p, q, t0, t1, tri, key):
        self.g, self.ver, self.gx, self.gy, self.w = g, ver, gx, gy, w
        self.p, self.q, self.t0, self.t1, self.tri, self.key = p, q, t0, t1, tri, key

    def __repr__(self):
        return "Window(g=%d, w=%.6g, edge=(%d,%d) [%.4g,%.4g] -> T%d, key=%.6g)" % (
            self.g, self.w, self.p, self.q, self.t0, self.t1, self.tri, self.key)


def _seg_dist(gx, gy, ax, ay, bx, by):
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return hypot(gx - ax, gy - ay)
    u = ((gx - ax) * dx + (gy - ay) * dy) / L2
    if u < 0.0:
        u = 0.0
    elif u > 1.0:
        u = 1.0
    return hypot(gx - ax - u * dx, gy - ay - u * dy)


def _ray_param(gx, gy, ax, ay, u, v):
    """Parameter on segment u->v hit by the line through g and a."""
    dx, dy = ax - gx, ay - gy
    ex, ey = v[0] - u[0], v[1] - u[1]
    den = ex * dy - ey * dx
    if den == 0.0:
        return None
    s = ((gx - u[0]) * dy - (gy - u[1]) * dx) / den
    return 0.0 if s < 0.0 else (1.0 if s > 1.0 else s)


class Propagator:
    """Window bookkeeping for one run; no event policy of its own."""

    def __init__(self, tri, tri_ok, pivot_ok, scale):
        self.tri = tri
        self.P = tri.vertices
        self.T = tri.triangles
        self.N = tri.neighbors
        self.tri_ok = tri_ok
        self.pivot_ok = pivot_ok
        self.tol = 1e-12 * scale
        self.len_tol = 1e-12
        self.processed = {}
        self.stats = {"windows": 0, "trimmed": 0, "pieces": 0}

    def make(self, g, ver, gx, gy, w, p, q, t0, t1, tri):
        P = self.P
        pp, pq = P[p], P[q]
        ex, ey = pq[0] - pp[0], pq[1] - pp[1]
        ax, ay = pp[0] + t0 * ex, pp[1] + t0 * ey
        bx, by = pp[0] + t1 * ex, pp[1] + t1 * ey
        key = w + _seg_dist(gx, gy, ax, ay, bx, by)
        return Window(g, ver, gx, gy, w, p, q, t0, t1, tri, key)

    def emit(self, v, ver, w):
        """Windows leaving generator v: the far edge of each incident triangle.

        Returns (windows, [(vertex, distance)] candidates).
        """
        P, T, N = self.P, self.T, self.N
        gx, gy = P[v]
        out, cands = [], []
        for t in self.tri.vertex_tris[v]:
            if not self.tri_ok[t]:
                continue
            tv = T[t]
            i = tv.index(v)
            a, b = tv[(i + 1) % 3], tv[(i + 2) % 3]
            cands.append((a, w + hypot(P[a][0] - gx, P[a][1] - gy)))
            cands.append((b, w + hypot(P[b][0] - gx, P[b][1] - gy)))
            nb = N[t][i]
            if nb >= 0 and self.tri_ok[nb]:
                # t lies left of a->b, so the neighbour lies left of b->a
                out.append(self.make(v, ver, gx, gy, w, b, a, 0.0, 1.0, nb))
        return out, cands

    def trim(self, W):
        """Parts of W not dominated by processed windows on its edge."""
        lst = self.processed.get((W.p, W.q))
        pieces = [(W.t0, W.t1)]
        if not lst:
            return pieces
        P = self.P
        pp, pq = P[W.p], P[W.q]
        D = (pq[0] - pp[0], pq[1] - pp[1])
        gx, gy, w = W.gx, W.gy, W.w
        tol = self.tol
        for (hx, hy, u, u0, u1) in lst:
            if u0 >= pieces[-1][1] or u1 <= pieces[0][0]:
                continue
            roots = None
            nxt = []
            for a0, a1 in pieces:
                lo, hi = max(a0, u0), min(a1, u1)
                if lo >= hi:
                    nxt.append((a0, a1))
                    continue
                if roots is None:
                    roots = sorted(bisector_line_roots((gx, gy), w, (hx, hy), u, pp, D))
                cuts = [a0]
                if lo > a0:
                    cuts.append(lo)
                cuts.extend(r for r in roots if lo < r < hi)
                if hi < a1:
                    cuts.append(hi)
                cuts.append(a1)
                for c0, c1 in zip(cuts, cuts[1:]):
                    if c1 <= c0:
                        continue
                    m = 0.5 * (c0 + c1)
                    if lo <= m <= hi:
                        X = pp[0] + m * D[0]
                        Y = pp[1] + m * D[1]
                        fw = w + hypot(X - gx, Y - gy)
                        fu = u + hypot(X - hx, Y - hy)
                        if fu <= fw + tol:
                            continue
                    if nxt and nxt[-1][1] == c0:
                        nxt[-1] = (nxt[-1][0], c1)
                    else:
                        nxt.append((c0, c1))
            pieces = nxt
            if not pieces:
                break
        return [pc for pc in pieces if pc[1] - pc[0] > self.len_tol]

    def record(self, W):
        self.processed.setdefault((W.p, W.q), []).append((W.gx, W.gy, W.w, W.t0, W.t1))

    def propagate(self, W):
        """Push W through its triangle.  Returns (children, candidates)."""
        P, T, N = self.P, self.T, self.N
        t = W.tri
        tv = T[t]
        p, q = W.p, W.q
        i = 0 if tv[0] not in (p, q) else (1 if tv[1] not in (p, q) else 2)
        x = tv[i]
        pp, pq, px = P[p], P[q], P[x]
        gx, gy, w = W.gx, W.gy, W.w
        g = (gx, gy)
        ex, ey = pq[0] - pp[0], pq[1] - pp[1]
        a = (pp[0] + W.t0 * ex, pp[1] + W.t0 * ey)
        b = (pp[0] + W.t1 * ex, pp[1] + W.t1 * ey)
        oa = orient(g, a, px)
        ob = orient(g, b, px)
        n_px = N[t][(i + 2) % 3]  # across x-p
        n_xq = N[t][(i + 1) % 3]  # across q-x
        kids, cands = [], []
        dx = w + hypot(px[0] - gx, px[1] - gy)
        if oa <= 0 and ob >= 0:
            cands.append((x, dx))
            s0 = _ray_param(gx, gy, a[0], a[1], pp, px)
            if s0 is not None:
                self._child(W, p, x, s0, 1.0, n_px, kids)
            s1 = _ray_param(gx, gy, b[0], b[1], px, pq)
            if s1 is not None:
                self._child(W, x, q, 0.0, s1, n_xq, kids)
        elif oa > 0:
            s0 = _ray_param(gx, gy, a[0], a[1], px, pq)
            s1 = _ray_param(gx, gy, b[0], b[1], px, pq)
            if s0 is not None and s1 is not None:
                if s0 <= 1e-10:
                    cands.append((x, dx))
                self._child(W, x, q, s0, s1, n_xq, kids)
        else:
            s0 = _ray_param(gx, gy, a[0], a[1], pp, px)
            s1 = _ray_param(gx, gy, b[0], b[1], pp, px)
            if s0 is not None and s1 is not None:
                if s1 >= 1.0 - 1e-10:
                    cands.append((x, dx))
                self._child(W, p, x, s0, s1, n_px, kids)
        return kids, cands

    def _child(self, W, u, v, s0, s1, nb, kids):
        if s0 > s1:
            s0, s1 = s1, s0
        if s1 - s0 <= self.len_tol or nb < 0 or not self.tri_ok[nb]:
            return
        kids.append(self.make(W.g, W.ver, W.gx, W.gy, W.w, u, v, s0, s1, nb))

"""Constrained triangulation of the free space.

Incremental Delaunay (Bowyer-Watson with a walking locator), constraint
recovery by edge flips, then a parity flood fill that discards triangles
outside the outer boundary or inside holes.  s and t are inserted as
ordinary vertices before the constraints are recovered.
"""
from collections import deque
from fractions import Fraction

from .geom import Point, orient, segments_cross_properly, signed_area


class TriangulationError(ValueError):
    pass


_ICC = (10.0 + 96.0 * 2.0 ** -53) * 2.0 ** -53


def incircle(a, b, c, d):
    """> 0 if d is strictly inside the circle through ccw a, b, c."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    bc = bdx * cdy - bdy * cdx
    ca = cdx * ady - cdy * adx
    ab = adx * bdy - ady * bdx
    det = alift * bc + blift * ca + clift * ab
    perm = (abs(bdx * cdy) + abs(bdy * cdx)) * alift + (abs(cdx * ady) + abs(cdy * adx)) * blift \
        + (abs(adx * bdy) + abs(ady * bdx)) * clift
    if abs(det) > _ICC * perm:
        return 1 if det > 0 else -1
    F = Fraction
    adx, ady = F(a[0]) - F(d[0]), F(a[1]) - F(d[1])
    bdx, bdy = F(b[0]) - F(d[0]), F(b[1]) - F(d[1])
    cdx, cdy = F(c[0]) - F(d[0]), F(c[1]) - F(d[1])
    det = ((adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
           + (bdx * bdx + bdy * bdy) * (cdx * ady - cdy * adx)
           + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx))
    return (det > 0) - (det < 0)


class _Mesh:
    """Mutable triangle soup with adjacency; edge i is opposite vertex i."""

    def __init__(self, pts):
        self.P = pts
        self.V = []
        self.N = []
        self.alive = []

    def add(self, a, b, c):
        self.V.append([a, b, c])
        self.N.append([-1, -1, -1])
        self.alive.append(True)
        return len(self.V) - 1

    def edge_index(self, t, u, v):
        tv = self.V[t]
        for i in range(3):
            if {tv[(i + 1) % 3], tv[(i + 2) % 3]} == {u, v}:
                return i
        return -1

    def link(self, t, i, s):
        self.N[t][i] = s

    def locate(self, p, start):
        t = start
        P = self.P
        seen = 0
        while True:
            seen += 1
            if seen > 4 * len(self.V) + 10:
                break
            a, b, c = self.V[t]
            moved = False
            for i, (u, v) in enumerate(((b, c), (c, a), (a, b))):
                if orient(P[u], P[v], p) < 0:
                    nt = self.N[t][i]
                    if nt >= 0:
                        t = nt
                        moved = True
                        break
            if not moved:
                return t
        # fall back to a scan (should not happen on valid input)
        for t in range(len(self.V)):
            if self.alive[t]:
                a, b, c = self.V[t]
                if orient(P[a], P[b], p) >= 0 and orient(P[b], P[c], p) >= 0 and orient(P[c], P[a], p) >= 0:
                    return t
        raise TriangulationError("point location failed")

    def insert(self, k, start):
        P = self.P
        p = P[k]
        t0 = self.locate(p, start)
        cavity = {t0}
        stack = [t0]
        while stack:
            t = stack.pop()
            for s in self.N[t]:
                if s >= 0 and s not in cavity:
                    a, b, c = self.V[s]
                    if incircle(P[a], P[b], P[c], p) > 0:
                        cavity.add(s)
                        stack.append(s)
        # boundary of the cavity, as directed edges (u, v) with outside neighbor
        bnd = []
        for t in cavity:
            tv = self.V[t]
            for i in range(3):
                s = self.N[t][i]
                if s < 0 or s not in cavity:
                    bnd.append((tv[(i + 1) % 3], tv[(i + 2) % 3], s))
        for t in cavity:
            self.alive[t] = False
        new = {}
        created = []
        for u, v, s in bnd:
            nt = self.add(k, u, v)
            created.append(nt)
            # edge 0 (u, v) faces s
            self.N[nt][0] = s
            if s >= 0:
                j = self.edge_index(s, u, v)
                self.N[s][j] = nt
            new[u] = (nt, 2)  # edge (k, u) is opposite v: index 2
        for nt in created:
            _, u, v = self.V[nt]
            # neighbor across edge (v, k) is the triangle whose u' == v
            m, idx = new[v]
            self.N[nt][1] = m
            self.N[m][idx] = nt
        return created[0]

    def flip(self, t, i):
        """Flip the edge opposite vertex i of t; returns the two new triangles."""
        V, N = self.V, self.N
        s = N[t][i]
        a = V[t][i]
        b, c = V[t][(i + 1) % 3], V[t][(i + 2) % 3]
        j = self.edge_index(s, b, c)
        d = V[s][j]
        # outer neighbors
        n_ab = N[t][(i + 2) % 3]  # opposite c: edge (a, b)
        n_ca = N[t][(i + 1) % 3]  # opposite b: edge (c, a)
        # in s (ccw): d, c, b ordering with edge (c, b)
        n_bd = N[s][self.edge_index(s, b, d)]
        n_dc = N[s][self.edge_index(s, d, c)]
        # new triangles: (a, b, d) and (a, d, c)
        V[t] = [a, b, d]
        V[s] = [a, d, c]
        N[t] = [n_bd, s, n_ab]
        N[s] = [n_dc, n_ca, t]
        for nb, tri, u, v in ((n_bd, t, b, d), (n_ab, t, a, b), (n_dc, s, d, c), (n_ca, s, c, a)):
            if nb >= 0:
                N[nb][self.edge_index(nb, u, v)] = tri
        return t, s


class Triangulation:
    """Immutable result: vertices, ccw triangles, adjacency, constraint marks."""

    def __init__(self, vertices, triangles, neighbors, constrained, vertex_poly, vertex_pos,
                 s_index, t_index, poly_sizes):
        self.vertices = vertices
        self.triangles = triangles
        self.neighbors = neighbors
        self.constrained = constrained
        self.vertex_poly = vertex_poly
        self.vertex_pos = vertex_pos
        self.s_index = s_index
        self.t_index = t_index
        self.poly_sizes = poly_sizes
        self.vertex_tris = [[] for _ in vertices]
        for ti, tv in enumerate(triangles):
            for v in tv:
                self.vertex_tris[v].append(ti)
        self.edges = {}
        for ti, tv in enumerate(triangles):
            for i in range(3):
                u, v = tv[(i + 1) % 3], tv[(i + 2) % 3]
                key = (u, v) if u < v else (v, u)
                self.edges.setdefault(key, []).append((ti, i))
        self.reflex = [self._is_reflex(v) for v in range(len(vertices))]

    def __len__(self):
        return len(self.triangles)

    def edge_points(self, t, i):
        tv = self.triangles[t]
        return self.vertices[tv[(i + 1) % 3]], self.vertices[tv[(i + 2) % 3]]

    def poly_neighbors(self, v):
        """(prev, next) obstacle vertices of v along its polygon, or None."""
        p = self.vertex_poly[v]
        if p < 0:
            return None
        base = sum(self.poly_sizes[:p])
        k = self.poly_sizes[p]
        i = self.vertex_pos[v]
        return base + (i - 1) % k, base + (i + 1) % k

    def _is_reflex(self, v):
        nb = self.poly_neighbors(v)
        if nb is None:
            return False
        a, c = nb
        # free space lies on the left of every polygon (outer ccw, holes cw)
        return orient(self.vertices[a], self.vertices[v], self.vertices[c]) < 0

    def area(self, t):
        a, b, c = (self.vertices[i] for i in self.triangles[t])
        return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    def centroid(self, t):
        a, b, c = (self.vertices[i] for i in self.triangles[t])
        return Point((a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0)

    def edge_count(self):
        return len(self.edges)

    def dump_off(self):
        lines = ["OFF", "%d %d 0" % (len(self.vertices), len(self.triangles))]
        lines += ["%r %r 0" % (p[0], p[1]) for p in self.vertices]
        lines += ["3 %d %d %d" % tuple(tv) for tv in self.triangles]
        return "\n".join(lines) + "\n"


def triangulate(inst, with_sites=True):
    polys = [list(inst.outer)] + [list(h) for h in inst.holes]
    pts, vpoly, vpos = [], [], []
    for pi_, poly in enumerate(polys):
        for i, p in enumerate(poly):
            pts.append(Point(*p))
            vpoly.append(pi_)
            vpos.append(i)
    s_index = t_index = -1
    if with_sites:
        s_index = len(pts)
        pts.append(Point(*inst.s))
        vpoly.append(-1)
        vpos.append(0)
        t_index = len(pts)
        pts.append(Point(*inst.t))
        vpoly.append(-2)
        vpos.append(0)
    if len(set(pts)) != len(pts):
        raise TriangulationError("duplicate vertices")
    n = len(pts)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    cx, cy = 0.5 * (min(xs) + max(xs)), 0.5 * (min(ys) + max(ys))
    R = 64.0 * (max(max(xs) - min(xs), max(ys) - min(ys)) + 1.0)
    sup = [Point(cx - 2.0 * R, cy - R), Point(cx + 2.0 * R, cy - R), Point(cx, cy + 2.0 * R)]
    allp = pts + sup
    mesh = _Mesh(allp)
    mesh.add(n, n + 1, n + 2)
    order = sorted(range(n), key=lambda i: (allp[i][0], allp[i][1]))
    last = 0
    for k in order:
        last = mesh.insert(k, last)
    # constraints
    cons = set()
    for pi_, poly in enumerate(polys):
        base = sum(len(q) for q in polys[:pi_])
        k = len(poly)
        for i in range(k):
            u, v = base + i, base + (i + 1) % k
            _recover(mesh, u, v)
            cons.add((min(u, v), max(u, v)))
    # parity flood fill from a super-triangle corner
    alive = [t for t in range(len(mesh.V)) if mesh.alive[t]]
    start = next(t for t in alive if any(v >= n for v in mesh.V[t]))
    par = {start: 0}
    dq = deque([start])
    while dq:
        t = dq.popleft()
        tv = mesh.V[t]
        for i in range(3):
            s = mesh.N[t][i]
            if s < 0 or s in par:
                continue
            u, v = tv[(i + 1) % 3], tv[(i + 2) % 3]
            c = (min(u, v), max(u, v)) in cons
            par[s] = par[t] ^ (1 if c else 0)
            dq.append(s)
    keep = [t for t in alive if par.get(t) == 1 and all(v < n for v in mesh.V[t])]
    # deterministic ids: sort by sorted vertex triple
    keep.sort(key=lambda t: tuple(sorted(mesh.V[t])))
    newid = {t: i for i, t in enumerate(keep)}
    tris, nbrs, cmarks = [], [], []
    for t in keep:
        tv = list(mesh.V[t])
        # rotate so the smallest vertex id comes first (keeps ccw)
        r = tv.index(min(tv))
        tv = tv[r:] + tv[:r]
        nb = mesh.N[t][r:] + mesh.N[t][:r]
        row_n, row_c = [], []
        for i in range(3):
            u, v = tv[(i + 1) % 3], tv[(i + 2) % 3]
            c = (min(u, v), max(u, v)) in cons
            s = nb[i]
            row_c.append(c)
            row_n.append(-1 if (c or s not in newid) else newid[s])
        tris.append(tuple(tv))
        nbrs.append(tuple(row_n))
        cmarks.append(tuple(row_c))
    return Triangulation(pts, tris, nbrs, cmarks, vpoly, vpos, s_index, t_index, [len(p) for p in polys])


def _recover(mesh, u, v):
    P = mesh.P
    pu, pv = P[u], P[v]

    def find_edge():
        for t in range(len(mesh.V)):
            if mesh.alive[t]:
                tv = mesh.V[t]
                if u in tv and v in tv:
                    return True
        return False

    if find_edge():
        return
    crossing = deque()
    for t in range(len(mesh.V)):
        if not mesh.alive[t]:
            continue
        tv = mesh.V[t]
        for i in range(3):
            a, b = tv[(i + 1) % 3], tv[(i + 2) % 3]
            if a < b and mesh.N[t][i] >= 0 and segments_cross_properly(pu, pv, P[a], P[b]):
                crossing.append((a, b))
    guard = 0
    while crossing:
        guard += 1
        if guard > 100000:
            raise TriangulationError("constraint recovery did not converge")
        a, b = crossing.popleft()
        t, i = _find_tri_edge(mesh, a, b)
        if t < 0:
            continue
        s = mesh.N[t][i]
        x = mesh.V[t][i]
        j = mesh.edge_index(s, a, b)
        y = mesh.V[s][j]
        # quad x, a, y, b must be strictly convex to flip
        if orient(P[x], P[y], P[a]) * orient(P[x], P[y], P[b]) < 0 and \
                orient(P[a], P[b], P[x]) * orient(P[a], P[b], P[y]) < 0:
            mesh.flip(t, i)
            if {x, y} != {u, v} and segments_cross_properly(pu, pv, P[x], P[y]):
                crossing.append((min(x, y), max(x, y)))
        else:
            crossing.append((a, b))
    if not find_edge():
        raise TriangulationError("constraint (%d, %d) missing" % (u, v))


def _find_tri_edge(mesh, a, b):
    for t in range(len(mesh.V)):
        if mesh.alive[t]:
            tv = mesh.V[t]
            if a in tv and b in tv:
                return t, mesh.edge_index(t, a, b)
    return -1, -1


def locate(tri, p):
    """Lowest-id triangle containing p (closed); error outside free space."""
    P = tri.vertices
    for t, (a, b, c) in enumerate(tri.triangles):
        if orient(P[a], P[b], p) >= 0 and orient(P[b], P[c], p) >= 0 and orient(P[c], P[a], p) >= 0:
            return t
    raise TriangulationError("point not in free space")


def check_triangulation(tri, inst=None):
    """Raise on any broken structural invariant; returns summary numbers."""
    P = tri.vertices
    for t, (a, b, c) in enumerate(tri.triangles):
        if orient(P[a], P[b], P[c]) <= 0:
            raise TriangulationError("triangle %d not ccw" % t)
        for i in range(3):
            s = tri.neighbors[t][i]
            if s >= 0 and t not in tri.neighbors[s]:
                raise TriangulationError("asymmetric adjacency %d-%d" % (t, s))
    V = len(set(v for tv in tri.triangles for v in tv))
    E = tri.edge_count()
    T = len(tri.triangles)
    if inst is not None:
        for poly in inst.polygons():
            k = len(poly)
            for i in range(k):
                u, v = P.index(poly[i]), P.index(poly[(i + 1) % k])
                key = (min(u, v), max(u, v))
                if key not in tri.edges:
                    raise TriangulationError("obstacle edge missing")
    return V, E, T

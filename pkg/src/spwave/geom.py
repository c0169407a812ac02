"""Geometric primitives.

Points are plain 2-tuples (``Point`` is a NamedTuple, so either works).
``orient`` is exact: a floating-point filter with a rational fallback.
Everything metric runs in hardware floats with the absolute tolerance EPS.

The second half of the module deals with wavefront arcs: a circular arc
centered at a site with radius ``d - weight`` over a fixed angular range.
Convex hulls of arcs are represented by their support function, stored as
an angular *envelope* of sinusoidal pieces.  Hull trees, strike distances
and bridges are all computed from envelopes.
"""
from fractions import Fraction
from math import acos, atan2, cos, hypot, pi, sin, sqrt, asinh, sinh, cosh, isfinite
from typing import NamedTuple, Optional, Sequence

EPS = 1e-9
TAU = 2.0 * pi


class GeomError(ValueError):
    pass


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point


class WeightedSite(NamedTuple):
    center: Point
    weight: float


class ConvexChainRef(NamedTuple):
    vertices: tuple
    orientation: str  # 'cw' or 'ccw'


# ---------------------------------------------------------------- predicates

_ERRBOUND = (3.0 + 16.0 * 2.0 ** -53) * 2.0 ** -53


def orient(a, b, c):
    """Sign of the signed area of triangle abc (+1 left turn)."""
    detl = (b[0] - a[0]) * (c[1] - a[1])
    detr = (b[1] - a[1]) * (c[0] - a[0])
    det = detl - detr
    bound = _ERRBOUND * (abs(detl) + abs(detr))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return orient_exact(a, b, c)


def orient_exact(a, b, c):
    ax, ay = Fraction(a[0]), Fraction(a[1])
    det = (Fraction(b[0]) - ax) * (Fraction(c[1]) - ay) - (Fraction(b[1]) - ay) * (Fraction(c[0]) - ax)
    return (det > 0) - (det < 0)


def cross(a, b, c):
    """Floating-point twice-signed-area of abc."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def dist(a, b):
    return hypot(a[0] - b[0], a[1] - b[1])


def closest_on_segment(p, a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return (a[0], a[1]), 0.0
    u = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2
    u = 0.0 if u < 0.0 else (1.0 if u > 1.0 else u)
    return (a[0] + u * dx, a[1] + u * dy), u


def dist_point_segment(p, a, b):
    q, _ = closest_on_segment(p, a, b)
    return dist(p, q)


def on_segment(p, a, b):
    """p lies on the closed segment ab (exact)."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_cross_properly(p1, p2, q1, q2):
    """Open segments p1p2 and q1q2 cross at a single interior point."""
    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_intersect(p1, p2, q1, q2):
    """Closed segments share at least one point (exact)."""
    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and on_segment(q1, p1, p2)) or (o2 == 0 and on_segment(q2, p1, p2))
            or (o3 == 0 and on_segment(p1, q1, q2)) or (o4 == 0 and on_segment(p2, q1, q2)))


def signed_area(poly):
    s = 0.0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return 0.5 * s


def point_in_polygon(p, poly):
    """Crossing-number test: 1 inside, 0 on boundary, -1 outside."""
    n = len(poly)
    inside = False
    px, py = p
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if on_segment(p, a, b):
            return 0
        if (a[1] > py) != (b[1] > py):
            # crossing of the horizontal ray going right
            o = orient(a, b, p)
            if (b[1] > a[1] and o > 0) or (b[1] < a[1] and o < 0):
                inside = not inside
    return 1 if inside else -1


def is_convex_chain(vertices, orientation=None):
    """Consecutive triples turn uniformly (collinear triples are rejected)."""
    sgn = None if orientation is None else (1 if orientation == 'ccw' else -1)
    for i in range(len(vertices) - 2):
        o = orient(vertices[i], vertices[i + 1], vertices[i + 2])
        if o == 0:
            return False
        if sgn is None:
            sgn = o
        elif o != sgn:
            return False
    return len(set(map(tuple, vertices))) == len(vertices)


def convex_hull(points):
    """Monotone chain, ccw, collinear points dropped."""
    pts = sorted(set((float(p[0]), float(p[1])) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


# ------------------------------------------------------------------- tangents

def tangent_from_point(p, chain, side='left'):
    """Chain vertex touched by a tangent from p.

    side='left' returns the vertex v with every chain vertex on the closed
    left side of the directed line p->v; 'right' the mirror case.  Among
    collinear candidates the one nearest to p is returned.
    """
    verts = chain.vertices if isinstance(chain, ConvexChainRef) else chain
    if len(verts) == 0:
        raise GeomError("empty chain")
    hull = convex_hull(verts)
    if len(hull) >= 3 and all(orient(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull))):
        raise GeomError("no tangent")
    if len(hull) <= 2 and any(tuple(p) == tuple(v) for v in verts):
        raise GeomError("no tangent")
    want = 1 if side == 'left' else -1
    best = None
    for i, v in enumerate(verts):
        if all(orient(p, v, w) * want >= 0 for w in verts):
            d = dist(p, v)
            if best is None or d < best[0]:
                best = (d, i)
    if best is None:
        raise GeomError("no tangent")
    i = best[1]
    return i, Point(*verts[i])


class Bridge(NamedTuple):
    a: Optional[Point]
    b: Optional[Point]
    ia: int
    ib: int
    overlap: bool


def _outer_tangent(c1, r1, c2, r2):
    """Directed tangent with both discs on its right; None if nested."""
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    L = hypot(dx, dy)
    if L == 0.0 or abs(r1 - r2) > L:
        return None
    al = (r1 - r2) / L
    be = sqrt(max(0.0, 1.0 - al * al))
    ex, ey = dx / L, dy / L
    nx, ny = al * ex - be * ey, al * ey + be * ex
    return (c1[0] + r1 * nx, c1[1] + r1 * ny), (c2[0] + r2 * nx, c2[1] + r2 * ny), (nx, ny)


def common_tangent(chain_a, chain_b, offset_a=0.0, offset_b=0.0):
    """Bridge between two hulls grown by their offsets.

    The returned segment runs from hull A to hull B with both hulls on its
    closed right side.  ``overlap`` reports whether the grown hulls meet.
    Single-point hulls are fine; if one hull swallows the other there is no
    bridge and only the overlap flag is meaningful.
    """
    A = list(chain_a.vertices if isinstance(chain_a, ConvexChainRef) else chain_a)
    B = list(chain_b.vertices if isinstance(chain_b, ConvexChainRef) else chain_b)
    discs = [(a, offset_a) for a in A] + [(b, offset_b) for b in B]
    best = None
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            t = _outer_tangent(a, offset_a, b, offset_b)
            if t is None:
                continue
            pa, pb, n = t
            h = n[0] * pa[0] + n[1] * pa[1]
            if all(n[0] * c[0] + n[1] * c[1] + r <= h + EPS * (1.0 + abs(h)) for c, r in discs):
                L = dist(pa, pb)
                if best is None or L > best[0] + EPS:
                    best = (L, i, j, pa, pb)
    ov = hulls_overlap([Arc(a, -offset_a) for a in A], [Arc(b, -offset_b) for b in B], 0.0)
    if best is None:
        return Bridge(None, None, -1, -1, True)
    _, i, j, pa, pb = best
    return Bridge(Point(*pa), Point(*pb), i, j, ov)


# ------------------------------------------------------------------ bisectors

class Bisector:
    """Additively weighted bisector of two sites.

    Parameterized by tau: tau = 0 is the point on the segment between the
    centers and |tau| grows monotonically with arc length in both
    directions.  tau > 0 lies on the left of the directed line from
    left.center to right.center.
    """

    def __init__(self, left, right):
        self.left, self.right = left, right
        (ax, ay), wa = left
        (bx, by), wb = right
        L = hypot(bx - ax, by - ay)
        if L == 0.0:
            raise GeomError("coincident centers")
        delta = wb - wa  # |p-a| - |p-b| = delta
        if abs(delta) >= L:
            raise GeomError("empty bisector")
        self.delta = delta
        self.c = 0.5 * L
        self.ah = 0.5 * abs(delta)
        self.bh = sqrt(self.c * self.c - self.ah * self.ah)
        self.mid = (0.5 * (ax + bx), 0.5 * (ay + by))
        self.e = ((bx - ax) / L, (by - ay) / L)
        self.n = (-self.e[1], self.e[0])
        self.sgn = 1.0 if delta > 0 else -1.0
        self.kind = 'line' if delta == 0.0 else 'hyperbola-branch'

    def point(self, tau):
        if self.kind == 'line':
            u, v = 0.0, tau
        else:
            u, v = self.sgn * self.ah * cosh(tau), self.bh * sinh(tau)
        return Point(self.mid[0] + u * self.e[0] + v * self.n[0], self.mid[1] + u * self.e[1] + v * self.n[1])

    def tau_of(self, p):
        v = (p[0] - self.mid[0]) * self.n[0] + (p[1] - self.mid[1]) * self.n[1]
        if self.kind == 'line':
            return v
        return asinh(v / self.bh)

    def residual(self, p):
        (a, wa), (b, wb) = self.left, self.right
        return (wa + dist(p, a)) - (wb + dist(p, b))


def make_bisector(a, b):
    a = WeightedSite(Point(*a[0]), float(a[1]))
    b = WeightedSite(Point(*b[0]), float(b[1]))
    return Bisector(a, b)


def bisector_line_roots(ga, wa, gb, wb, P, D):
    """Parameters u where wa+|P+uD-ga| = wb+|P+uD-gb| (all real roots)."""
    delta = wa - wb
    # |X-gb| - |X-ga| = delta  with X = P + u D
    # |X-gb|^2 - |X-ga|^2 = k0 + k1 u (linear)
    k0 = (P[0] - gb[0]) ** 2 + (P[1] - gb[1]) ** 2 - (P[0] - ga[0]) ** 2 - (P[1] - ga[1]) ** 2
    k1 = 2.0 * (D[0] * (ga[0] - gb[0]) + D[1] * (ga[1] - gb[1]))
    if delta == 0.0:
        if k1 == 0.0:
            return []
        return [-k0 / k1]
    # |X-gb| = delta + |X-ga|  -> k0 + k1 u - delta^2 = 2 delta |X-ga|
    # square: (k0 - delta^2 + k1 u)^2 = 4 delta^2 |X-ga|^2
    m0, m1 = k0 - delta * delta, k1
    qx, qy = P[0] - ga[0], P[1] - ga[1]
    f = 4.0 * delta * delta
    A = m1 * m1 - f * (D[0] * D[0] + D[1] * D[1])
    B = 2.0 * m0 * m1 - f * 2.0 * (qx * D[0] + qy * D[1])
    C = m0 * m0 - f * (qx * qx + qy * qy)
    roots = _quadratic(A, B, C)
    out = []
    for u in roots:
        X = (P[0] + u * D[0], P[1] + u * D[1])
        # reject roots of the squared equation that solve the wrong sign
        r = (wa + dist(X, ga)) - (wb + dist(X, gb))
        scale = 1.0 + abs(wa) + abs(wb) + dist(X, ga)
        if abs(r) <= 1e-7 * scale:
            out.append(u)
    return out


def _quadratic(A, B, C):
    scale = max(abs(A), abs(B), abs(C))
    if scale == 0.0:
        return []
    if abs(A) <= 1e-14 * scale:
        if B == 0.0:
            return []
        return [-C / B]
    disc = B * B - 4.0 * A * C
    if disc < 0.0:
        if disc > -1e-12 * (B * B + abs(4.0 * A * C)):
            disc = 0.0
        else:
            return []
    sq = sqrt(disc)
    q = -0.5 * (B + (sq if B >= 0 else -sq))
    r1 = q / A
    r2 = C / q if q != 0.0 else r1
    return sorted({r1, r2})


def intersect_bisector_segment(bis, seg, half=0):
    """First point of the bisector on seg, by |tau|; None if disjoint.

    half=+1/-1 restricts to tau >= 0 / tau <= 0.
    """
    a, b = seg
    D = (b[0] - a[0], b[1] - a[1])
    (ga, wa), (gb, wb) = bis.left, bis.right
    us = bisector_line_roots(ga, wa, gb, wb, a, D)
    tol = EPS / max(hypot(*D), EPS)
    best = None
    for u in us:
        if u < -tol or u > 1.0 + tol:
            continue
        u = min(1.0, max(0.0, u))
        p = Point(a[0] + u * D[0], a[1] + u * D[1])
        tau = bis.tau_of(p)
        if half * tau < -EPS:
            continue
        key = abs(tau)
        if best is None or key < best[0]:
            best = (key, p)
    return None if best is None else best[1]


def strike_distance(site, target):
    """Global radius at which the site's circle first reaches target."""
    (c, w) = site
    if len(target) == 2 and not isinstance(target[0], (int, float)):
        return w + dist_point_segment(c, target[0], target[1])
    return w + dist(c, target)


# ------------------------------------------------------- arcs and envelopes

def ang(x, y):
    t = atan2(y, x)
    return t + TAU if t < 0.0 else t


def unit(t):
    return (cos(t), sin(t))


class Arc:
    """Wavefront segment: center, weight, angular range [lo, lo+span].

    At global radius d the arc has radius d - weight; it is valid iff that
    radius is positive (a zero-radius site counts as valid).
    """
    __slots__ = ('center', 'weight', 'lo', 'span', 'tag')

    def __init__(self, center, weight, lo=0.0, span=TAU, tag=None):
        self.center = (float(center[0]), float(center[1]))
        self.weight = float(weight)
        self.lo = lo % TAU
        self.span = min(max(span, 0.0), TAU)
        self.tag = tag

    def full(self):
        return self.span >= TAU

    def contains_dir(self, t):
        if self.full():
            return True
        return (t - self.lo) % TAU <= self.span + 1e-12

    def endpoint(self, d, which):
        r = d - self.weight
        t = self.lo if which == 0 else self.lo + self.span
        return (self.center[0] + r * cos(t), self.center[1] + r * sin(t))

    def pieces(self, d):
        """Support pieces (qx, qy, k, lo, span, tag) at radius d."""
        r = d - self.weight
        if r < 0.0:
            return []
        cx, cy = self.center
        if self.full() or r == 0.0:
            return [(cx, cy, r, 0.0, TAU, self.tag)]
        out = [(cx, cy, r, self.lo, self.span, self.tag)]
        for t in (self.lo, self.lo + self.span):
            out.append((cx + r * cos(t), cy + r * sin(t), 0.0, 0.0, TAU, self.tag))
        return out

    def __repr__(self):
        return "Arc(%r, %r, %.4f, %.4f)" % (self.center, self.weight, self.lo, self.span)


def _split_range(lo, span):
    """Angular range as a list of [a, b] sub-intervals of [0, TAU]."""
    if span >= TAU:
        return [(0.0, TAU)]
    hi = lo + span
    if hi <= TAU:
        return [(lo, hi)]
    return [(lo, TAU), (0.0, hi - TAU)]


def _piece_val(pc, t):
    return pc[0] * cos(t) + pc[1] * sin(t) + pc[2]


def _piece_envelope(pc):
    return sorted((a, b, pc) for a, b in _split_range(pc[3], pc[4]))


def _roots_between(p1, p2, a, b):
    A, B, C = p1[0] - p2[0], p1[1] - p2[1], p1[2] - p2[2]
    R = hypot(A, B)
    if R <= 1e-15 * (1.0 + abs(C)):
        return []
    x = -C / R
    if x > 1.0 or x < -1.0:
        return []
    phi = atan2(B, A)
    g = acos(x)
    out = []
    for t in (phi + g, phi - g):
        t %= TAU
        for tt in (t, t + TAU, t - TAU):
            if a < tt < b:
                out.append(tt)
    return sorted(set(out))


def merge_envelopes(E1, E2):
    """Upper envelope of two envelopes (lists of (a, b, piece))."""
    if not E1:
        return list(E2)
    if not E2:
        return list(E1)
    cuts = sorted({0.0, TAU} | {x for a, b, _ in E1 for x in (a, b)} | {x for a, b, _ in E2 for x in (a, b)})
    out = []
    i = j = 0
    for k in range(len(cuts) - 1):
        a, b = cuts[k], cuts[k + 1]
        if b - a <= 0.0:
            continue
        m = 0.5 * (a + b)
        while i < len(E1) and E1[i][1] <= m:
            i += 1
        while j < len(E2) and E2[j][1] <= m:
            j += 1
        p1 = E1[i][2] if i < len(E1) and E1[i][0] <= m else None
        p2 = E2[j][2] if j < len(E2) and E2[j][0] <= m else None
        if p1 is None and p2 is None:
            continue
        if p1 is None or p2 is None:
            _emit(out, a, b, p1 if p2 is None else p2)
            continue
        sub = [a] + _roots_between(p1, p2, a, b) + [b]
        for s in range(len(sub) - 1):
            x, y = sub[s], sub[s + 1]
            # no sign change inside (x, y); pieces may still touch at a
            # tangency, so decide where they differ the most
            diff = max((_piece_val(p1, x + f * (y - x)) - _piece_val(p2, x + f * (y - x))
                        for f in (0.25, 0.5, 0.75)), key=abs)
            _emit(out, x, y, p1 if diff >= 0.0 else p2)
    return out


def _emit(out, a, b, pc):
    if out and out[-1][2] is pc and abs(out[-1][1] - a) <= 0.0:
        out[-1] = (out[-1][0], b, pc)
    else:
        out.append((a, b, pc))


def envelope_of_pieces(pieces):
    envs = [_piece_envelope(pc) for pc in pieces]
    if not envs:
        return []
    while len(envs) > 1:
        nxt = []
        for i in range(0, len(envs) - 1, 2):
            nxt.append(merge_envelopes(envs[i], envs[i + 1]))
        if len(envs) % 2:
            nxt.append(envs[-1])
        envs = nxt
    return envs[0]


def envelope_of_arcs(arcs, d):
    return envelope_of_pieces([pc for a in arcs for pc in a.pieces(d)])


def shift_pieces(env, dr):
    """Envelope of the same arcs after the radius grows by dr.

    Only valid while the combinatorial structure is unchanged; used to
    advance bridges radially.
    """
    out = []
    for a, b, pc in env:
        qx, qy, k, lo, span, tag = pc
        out.append((a, b, (qx, qy, k + dr, lo, span, tag)))
    return out


def support(env, t):
    """Support function of an envelope at direction t (-inf if empty)."""
    t %= TAU
    best = float('-inf')
    for a, b, pc in env:
        if a <= t <= b:
            best = max(best, _piece_val(pc, t))
    return best


def support_point(pc, t):
    r = pc[2]
    return (pc[0] + r * cos(t), pc[1] + r * sin(t))


def hull_vertices(env):
    """Boundary of the hull as (piece tag, start angle, end angle) runs."""
    return [(pc[5], a, b) for a, b, pc in env]


def hull_polygon(env, arc_steps=4):
    """Polyline approximation of the hull boundary (for rendering/tests)."""
    pts = []
    for a, b, pc in env:
        n = 1 if pc[2] == 0.0 else max(1, int(arc_steps * (b - a) / (pi / 8)) + 1)
        for s in range(n + 1):
            t = a + (b - a) * s / n
            pts.append(support_point(pc, t))
    return pts


def _max_sinusoid(A, B, k, a, b):
    """max of A cos t + B sin t + k over [a, b]."""
    best = max(A * cos(a) + B * sin(a), A * cos(b) + B * sin(b))
    if A != 0.0 or B != 0.0:
        t0 = atan2(B, A)
        for tt in (t0, t0 + TAU, t0 - TAU):
            if a <= tt <= b:
                best = max(best, hypot(A, B))
    return best + k


def signed_dist_point(env, p):
    """Signed distance from the hull to p (negative inside)."""
    best = float('-inf')
    for a, b, pc in env:
        best = max(best, _max_sinusoid(p[0] - pc[0], p[1] - pc[1], -pc[2], a, b))
    return best


def signed_dist_segment(env, P, Q):
    """Signed separation between the hull and the segment PQ."""
    if P == Q:
        return signed_dist_point(env, P)
    # min(P.u, Q.u) switches where (P-Q).u = 0
    ex, ey = P[0] - Q[0], P[1] - Q[1]
    t0 = ang(-ey, ex)
    t1 = (t0 + pi) % TAU
    cuts = sorted({t0, t1})
    best = float('-inf')
    for a, b, pc in env:
        sub = [a] + [c for c in cuts if a < c < b] + [b]
        for s in range(len(sub) - 1):
            x, y = sub[s], sub[s + 1]
            m = 0.5 * (x + y)
            um = unit(m)
            X = P if P[0] * um[0] + P[1] * um[1] <= Q[0] * um[0] + Q[1] * um[1] else Q
            best = max(best, _max_sinusoid(X[0] - pc[0], X[1] - pc[1], -pc[2], x, y))
    return best


def envelope_contains(outer, inner, samples=720, tol=EPS):
    """Support of inner never exceeds support of outer (sampled + breakpoints)."""
    ts = {TAU * i / samples for i in range(samples)}
    ts |= {a for a, _, _ in outer} | {a for a, _, _ in inner}
    ts |= {0.5 * (a + b) for a, b, _ in inner}
    for t in ts:
        si = support(inner, t)
        if si == float('-inf'):
            continue
        if si > support(outer, t) + tol * (1.0 + abs(si)):
            return False
    return True


def hulls_overlap(arcs_a, arcs_b, d):
    """Whether the hulls of two arc sets at radius d intersect."""
    ea, eb = envelope_of_arcs(arcs_a, d), envelope_of_arcs(arcs_b, d)
    if not ea or not eb:
        return False
    return hull_separation(ea, eb) <= EPS


def hull_separation(ea, eb):
    """Signed separation of two hulls: max_u -(h_a(u) + h_b(-u))."""
    flipped = []
    for a, b, pc in eb:
        qx, qy, k, lo, span, tag = pc
        for x, y in _split_range((a + pi) % TAU, b - a):
            flipped.append((x, y, (-qx, -qy, k, lo, span, tag)))
    flipped.sort(key=lambda e: e[0])
    best = float('-inf')
    cuts = sorted({0.0, TAU} | {x for a, b, _ in ea for x in (a, b)} | {x for a, b, _ in flipped for x in (a, b)})
    for k in range(len(cuts) - 1):
        a, b = cuts[k], cuts[k + 1]
        if b <= a:
            continue
        m = 0.5 * (a + b)
        pa = [pc for x, y, pc in ea if x <= m <= y]
        pb = [pc for x, y, pc in flipped if x <= m <= y]
        if not pa or not pb:
            continue
        p1 = max(pa, key=lambda pc: _piece_val(pc, m))
        p2 = max(pb, key=lambda pc: _piece_val(pc, m))
        # h_a(u) + h_b(-u) with h_b(-u) = (-q).u + k on flipped angles
        best = max(best, _max_sinusoid(-(p1[0] + p2[0]), -(p1[1] + p2[1]), -(p1[2] + p2[2]), a, b))
    return best


# ------------------------------------------------- cone-restricted distances

def cone_point_distance(c, lo, span, p):
    """Distance from c to p if p lies in the direction cone, else inf."""
    if p[0] == c[0] and p[1] == c[1]:
        return 0.0
    if span >= TAU:
        return dist(c, p)
    t = ang(p[0] - c[0], p[1] - c[1])
    if (t - lo) % TAU <= span + 1e-12:
        return dist(c, p)
    return float('inf')


def cone_segment_distance(c, lo, span, P, Q):
    """Distance from c to the part of segment PQ inside the cone.

    Returns (distance, witness point) or (inf, None).
    """
    if span >= TAU:
        q, _ = closest_on_segment(c, P, Q)
        return dist(c, q), q
    cands = []
    q, _ = closest_on_segment(c, P, Q)
    cands.append(q)
    cands.extend([P, Q])
    # boundary rays of the cone against the segment
    for t in (lo, lo + span):
        ux, uy = cos(t), sin(t)
        dx, dy = Q[0] - P[0], Q[1] - P[1]
        den = ux * dy - uy * dx
        if den == 0.0:
            continue
        wx, wy = P[0] - c[0], P[1] - c[1]
        s = (wx * dy - wy * dx) / den
        v = (wx * uy - wy * ux) / den
        if s >= 0.0 and -1e-12 <= v <= 1.0 + 1e-12:
            v = min(1.0, max(0.0, v))
            cands.append((P[0] + v * dx, P[1] + v * dy))
    best = (float('inf'), None)
    for x in cands:
        if _in_cone(c, lo, span, x):
            dd = dist(c, x)
            if dd < best[0]:
                best = (dd, (x[0], x[1]))
    return best


def _in_cone(c, lo, span, x):
    dx, dy = x[0] - c[0], x[1] - c[1]
    if abs(dx) + abs(dy) <= 1e-12:
        return True
    t = ang(dx, dy)
    slack = 1e-9 / max(hypot(dx, dy), 1e-300)
    return (t - lo) % TAU <= span + max(1e-12, slack) or (lo - t) % TAU <= max(1e-12, slack)


def finite_point(p):
    return isfinite(p[0]) and isfinite(p[1])

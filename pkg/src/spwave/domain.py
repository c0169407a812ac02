"""Problem instances: model, validation, JSON I/O and random generation."""
import json
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .geom import Point, orient, on_segment, point_in_polygon, signed_area, dist_point_segment

MAX_DIAMETER = 1000.0
EPS_PLACE = 1e-3


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    outer: tuple
    holes: tuple
    s: Point
    t: Point
    scale: float = 1.0  # original units = stored units * scale

    @property
    def n(self):
        return len(self.outer) + sum(len(h) for h in self.holes)

    @property
    def m(self):
        return len(self.holes)

    def polygons(self):
        return [self.outer] + list(self.holes)

    def edges(self):
        out = []
        for poly in self.polygons():
            k = len(poly)
            out.extend((poly[i], poly[(i + 1) % k]) for i in range(k))
        return out

    def diameter(self):
        xs = [p[0] for p in self.outer]
        ys = [p[1] for p in self.outer]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys))

    def free_area(self):
        return signed_area(self.outer) + sum(signed_area(h) for h in self.holes)

    def in_free_space(self, p, strict=True):
        c = point_in_polygon(p, self.outer)
        if c < 0 or (strict and c == 0):
            return False
        for h in self.holes:
            c = point_in_polygon(p, h)
            if c > 0 or (strict and c == 0):
                return False
        return True

    def to_dict(self):
        f = self.scale
        return {
            "outer": [[p[0] * f, p[1] * f] for p in self.outer],
            "holes": [[[p[0] * f, p[1] * f] for p in h] for h in self.holes],
            "s": [self.s[0] * f, self.s[1] * f],
            "t": [self.t[0] * f, self.t[1] * f],
        }


@dataclass
class PathResult:
    distance: float
    path: list
    counters: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    def to_dict(self):
        return {"distance": self.distance, "path": [[p[0], p[1]] for p in self.path],
                "counters": dict(sorted(self.counters.items()))}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def serialize(inst):
    return json.dumps(inst.to_dict())


def _pt(v, what):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise InstanceError("%s: expected [x, y]" % what)
    x, y = v
    if isinstance(x, bool) or isinstance(y, bool) or not isinstance(x, (int, float)) or not isinstance(y, (int, float)):
        raise InstanceError("%s: coordinates must be numbers" % what)
    x, y = float(x), float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InstanceError("%s: non-finite coordinate" % what)
    return Point(x, y)


def _poly(v, what):
    if not isinstance(v, (list, tuple)):
        raise InstanceError("%s: expected a list of points" % what)
    pts = [_pt(p, what) for p in v]
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 3:
        raise InstanceError("%s: fewer than 3 vertices" % what)
    return pts


def parse_instance(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise InstanceError("not UTF-8: %s" % e)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError("syntax error at line %d column %d: %s" % (e.lineno, e.colno, e.msg))
    return instance_from_dict(obj)


def instance_from_dict(obj):
    if not isinstance(obj, dict):
        raise InstanceError("top level must be an object")
    for key in ("outer", "s", "t"):
        if key not in obj:
            raise InstanceError("missing field %r" % key)
    outer = _poly(obj["outer"], "outer")
    holes = [_poly(h, "hole %d" % i) for i, h in enumerate(obj.get("holes", []))]
    s, t = _pt(obj["s"], "s"), _pt(obj["t"], "t")
    return make_instance(outer, holes, s, t)


def make_instance(outer, holes, s, t, validate_input=True):
    outer = [Point(float(p[0]), float(p[1])) for p in outer]
    holes = [[Point(float(p[0]), float(p[1])) for p in h] for h in holes]
    if signed_area(outer) < 0:
        outer.reverse()
    for h in holes:
        if signed_area(h) > 0:
            h.reverse()
    s, t = Point(float(s[0]), float(s[1])), Point(float(t[0]), float(t[1]))
    # power-of-two scaling keeps coordinates bit-exact
    xs = [p[0] for p in outer]
    ys = [p[1] for p in outer]
    diam = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
    scale = 1.0
    while diam / scale > MAX_DIAMETER:
        scale *= 2.0
    if scale != 1.0:
        f = 1.0 / scale
        outer = [Point(p[0] * f, p[1] * f) for p in outer]
        holes = [[Point(p[0] * f, p[1] * f) for p in h] for h in holes]
        s, t = Point(s[0] * f, s[1] * f), Point(t[0] * f, t[1] * f)
    inst = Instance(tuple(outer), tuple(tuple(h) for h in holes), s, t, scale)
    if validate_input:
        validate(inst)
    return inst


def _edges_array(poly):
    P = np.asarray(poly, dtype=float)
    return P, np.roll(P, -1, axis=0)


def _candidate_pairs(A0, A1, B0, B1):
    """Index pairs of segments whose bounding boxes overlap."""
    ax0, ax1 = np.minimum(A0[:, 0], A1[:, 0]), np.maximum(A0[:, 0], A1[:, 0])
    ay0, ay1 = np.minimum(A0[:, 1], A1[:, 1]), np.maximum(A0[:, 1], A1[:, 1])
    bx0, bx1 = np.minimum(B0[:, 0], B1[:, 0]), np.maximum(B0[:, 0], B1[:, 0])
    by0, by1 = np.minimum(B0[:, 1], B1[:, 1]), np.maximum(B0[:, 1], B1[:, 1])
    m = ((ax0[:, None] <= bx1[None, :]) & (bx0[None, :] <= ax1[:, None])
         & (ay0[:, None] <= by1[None, :]) & (by0[None, :] <= ay1[:, None]))
    return np.argwhere(m)


def _touch(p1, p2, q1, q2):
    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and on_segment(q1, p1, p2)) or (o2 == 0 and on_segment(q2, p1, p2))
            or (o3 == 0 and on_segment(p1, q1, q2)) or (o4 == 0 and on_segment(p2, q1, q2)))


def _simple(poly):
    k = len(poly)
    if len(set(poly)) != k or abs(signed_area(poly)) == 0.0:
        return False
    P0, P1 = _edges_array(poly)
    for i, j in _candidate_pairs(P0, P1, P0, P1):
        if j <= i:
            continue
        a, b = poly[i], poly[(i + 1) % k]
        c, d = poly[j], poly[(j + 1) % k]
        if j == i + 1 or (i == 0 and j == k - 1):
            # adjacent edges: only the shared vertex may touch
            shared, x, y = (b, a, d) if j == i + 1 else (a, b, c)
            if orient(x, shared, y) == 0 and ((x[0] - shared[0]) * (y[0] - shared[0]) + (x[1] - shared[1]) * (y[1] - shared[1])) > 0:
                return False
            continue
        if _touch(a, b, c, d):
            return False
    return True


def _polys_touch(A, B):
    A0, A1 = _edges_array(A)
    B0, B1 = _edges_array(B)
    for i, j in _candidate_pairs(A0, A1, B0, B1):
        if _touch(A[i], A[(i + 1) % len(A)], B[j], B[(j + 1) % len(B)]):
            return True
    return False


def validate(inst):
    outer, holes = list(inst.outer), [list(h) for h in inst.holes]
    if not _simple(outer):
        raise InstanceError("outer polygon is not simple")
    for i, h in enumerate(holes):
        if not _simple(h):
            raise InstanceError("hole %d is not simple" % i)
        if _polys_touch(h, outer) or any(point_in_polygon(p, outer) <= 0 for p in h):
            raise InstanceError("hole %d is not strictly inside the outer polygon" % i)
    for i in range(len(holes)):
        for j in range(i + 1, len(holes)):
            A, B = holes[i], holes[j]
            if _polys_touch(A, B) or point_in_polygon(A[0], B) >= 0 or point_in_polygon(B[0], A) >= 0:
                raise InstanceError("holes intersect (%d, %d)" % (i, j))
    if not inst.in_free_space(inst.s):
        raise InstanceError("source not in free space")
    if not inst.in_free_space(inst.t):
        raise InstanceError("sink not in free space")
    return inst


# ---------------------------------------------------------------- generator

BOX = 100.0


def random_instance(seed, m, k=8, tries=20000):
    """m convex k-gon holes in the square [0, 100]^2, deterministic in seed."""
    if m < 0 or k < 3:
        raise InstanceError("need m >= 0 and k >= 3")
    rng = random.Random("spwave:%d:%d:%d" % (seed, m, k))
    outer = [Point(0.0, 0.0), Point(BOX, 0.0), Point(BOX, BOX), Point(0.0, BOX)]
    # hole radius shrinks as the square fills up
    rmax = min(12.0, 0.55 * BOX / math.sqrt(max(m, 1)))
    rmin = 0.35 * rmax
    gap = max(2.0 * EPS_PLACE, 0.02 * rmax)
    discs, holes = [], []
    attempts = 0
    while len(holes) < m:
        attempts += 1
        if attempts > tries:
            raise InstanceError("could not place")
        r = rng.uniform(rmin, rmax)
        cx = rng.uniform(r + gap + 1.0, BOX - r - gap - 1.0)
        cy = rng.uniform(r + gap + 1.0, BOX - r - gap - 1.0)
        if any(math.hypot(cx - x, cy - y) < r + q + gap for x, y, q in discs):
            continue
        rot = rng.uniform(0.0, 2.0 * math.pi)
        angs = sorted((rot + 2.0 * math.pi * (i + rng.uniform(-0.3, 0.3)) / k) for i in range(k))
        poly = [Point(round(cx + r * math.cos(a), 6), round(cy + r * math.sin(a), 6)) for a in angs]
        poly.reverse()  # cw
        discs.append((cx, cy, r))
        holes.append(poly)

    def free_point(x0, x1):
        for _ in range(tries):
            p = Point(round(rng.uniform(x0, x1), 6), round(rng.uniform(2.0, BOX - 2.0), 6))
            if all(math.hypot(p[0] - x, p[1] - y) > q + gap for x, y, q in discs):
                return p
        raise InstanceError("could not place")

    s = free_point(2.0, 0.2 * BOX)
    t = free_point(0.8 * BOX, BOX - 2.0)
    return make_instance(outer, holes, s, t)


# ------------------------------------------------------------- fixtures

def fixture(name):
    """Small named instances shared by the tests and the CLI."""
    sq = [(-4.0, -4.0), (4.0, -4.0), (4.0, 4.0), (-4.0, 4.0)]
    if name == "free":
        return make_instance(sq, [], (-2.0, 0.0), (2.0, 0.0))
    if name == "square-hole":
        h = [(-0.5, -0.5), (-0.5, 0.5), (0.5, 0.5), (0.5, -0.5)]
        return make_instance(sq, [h], (-2.0, 0.0), (2.0, 0.0))
    if name == "two-holes":
        h1 = [(-1.5, -1.0), (-1.5, 1.0), (-0.5, 1.0), (-0.5, -1.0)]
        h2 = [(0.5, -0.2), (0.5, 2.0), (1.5, 2.0), (1.5, -0.2)]
        return make_instance(sq, [h1, h2], (-3.0, 0.1), (3.0, 0.3))
    if name == "u-duct":
        outer = [(0.0, 0.0), (6.0, 0.0), (6.0, 6.0), (4.0, 6.0), (4.0, 2.0), (2.0, 2.0), (2.0, 6.0), (0.0, 6.0)]
        return make_instance(outer, [], (1.0, 5.0), (5.0, 5.0))
    if name == "comb":
        outer = [(0.0, 0.0), (10.0, 0.0), (10.0, 4.0), (8.0, 4.0), (8.0, 1.5), (7.0, 1.5), (7.0, 4.0),
                 (5.5, 4.0), (5.5, 1.5), (4.5, 1.5), (4.5, 4.0), (3.0, 4.0), (3.0, 1.5), (2.0, 1.5),
                 (2.0, 4.0), (0.0, 4.0)]
        return make_instance(outer, [], (1.0, 3.5), (9.0, 3.5))
    if name == "nonconvex-hole":
        h = [(-1.0, -1.5), (-1.0, 1.5), (1.0, 1.5), (1.0, 1.0), (0.0, 1.0), (0.0, -1.0), (1.0, -1.0), (1.0, -1.5)]
        return make_instance(sq, [h], (-3.0, 0.2), (0.5, 0.0))
    if name == "ring":
        hs = []
        for i in range(6):
            a = 2.0 * math.pi * i / 6
            cx, cy = 2.4 * math.cos(a), 2.4 * math.sin(a)
            hs.append([(cx + 0.6 * math.cos(b), cy + 0.6 * math.sin(b)) for b in [2.0 * math.pi * j / 5 for j in range(5)]])
        return make_instance([(-5.0, -5.0), (5.0, -5.0), (5.0, 5.0), (-5.0, 5.0)], hs, (0.0, 0.1), (4.5, 4.4))
    raise KeyError(name)


FIXTURES = ("free", "square-hole", "two-holes", "u-duct", "comb", "nonconvex-hole", "ring")

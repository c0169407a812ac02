"""Deterministic SVG renders of instances, decompositions, paths and wavefronts."""
import json
from math import cos, sin, pi

import numpy as np

from .corridors import build_decomposition
from .triangulate import triangulate

PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5")


class RenderError(ValueError):
    pass


def _fmt(x):
    return ("%.6f" % x).rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, inst, size=600.0):
        pts = [p for poly in inst.polygons() for p in poly] + [inst.s, inst.t]
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        f = inst.scale
        self.x0, self.y1 = min(xs) * f, max(ys) * f
        w = max(max(xs) - min(xs), max(ys) - min(ys), 1e-12) * f
        self.k = size / w
        self.size = size
        self.parts = []

    def xy(self, p):
        return _fmt((p[0] - self.x0) * self.k + 10), _fmt((self.y1 - p[1]) * self.k + 10)

    def polygon(self, pts, fill, stroke="#333", cls=""):
        s = " ".join("%s,%s" % self.xy(p) for p in pts)
        self.parts.append('<polygon class="%s" points="%s" fill="%s" stroke="%s" stroke-width="1"/>'
                          % (cls, s, fill, stroke))

    def polyline(self, pts, stroke, cls="", width=2):
        s = " ".join("%s,%s" % self.xy(p) for p in pts)
        self.parts.append('<polyline class="%s" points="%s" fill="none" stroke="%s" stroke-width="%d"/>'
                          % (cls, s, stroke, width))

    def circle(self, p, r, fill, cls=""):
        x, y = self.xy(p)
        self.parts.append('<circle class="%s" cx="%s" cy="%s" r="%s" fill="%s"/>' % (cls, x, y, _fmt(r), fill))

    def arc(self, pts, stroke="#d62728"):
        x, y = self.xy(pts[0])
        d = ["M%s %s" % (x, y)] + ["L%s %s" % self.xy(p) for p in pts[1:]]
        self.parts.append('<path class="arc" d="%s" fill="none" stroke="%s" stroke-width="1.5"/>'
                          % (" ".join(d), stroke))

    def svg(self):
        s = _fmt(self.size + 20)
        head = '<svg xmlns="http://www.w3.org/2000/svg" width="%s" height="%s" viewBox="0 0 %s %s">' % (s, s, s, s)
        return "\n".join([head] + self.parts + ["</svg>"]) + "\n"


def _scaled(inst, poly):
    f = inst.scale
    return [(x * f, y * f) for x, y in poly]


def _obstacles(c, inst):
    # the outer boundary is drawn as a frame and the holes filled, so there are m+1 polygons
    c.polygon(_scaled(inst, inst.outer), "#ffffff", cls="outer")
    for h in inst.holes:
        c.polygon(_scaled(inst, h), "#7f7f7f", cls="hole")


def _endpoints(c, inst):
    f = inst.scale
    c.circle((inst.s[0] * f, inst.s[1] * f), 4, "#2ca02c", cls="s")
    c.circle((inst.t[0] * f, inst.t[1] * f), 4, "#1f77b4", cls="t")


def render_domain(inst):
    c = _Canvas(inst)
    _obstacles(c, inst)
    _endpoints(c, inst)
    return c.svg()


def render_decomposition(inst):
    c = _Canvas(inst)
    _obstacles(c, inst)
    tri = triangulate(inst)
    d = build_decomposition(tri, mark=False)
    f = inst.scale
    for t in sorted(d.region_of):
        kind, rid = d.region_of[t]
        pts = [(tri.vertices[v][0] * f, tri.vertices[v][1] * f) for v in tri.triangles[t]]
        fill = "#e31a1c" if kind == 'J' else PALETTE[rid % len(PALETTE)]
        c.parts.append('<!-- %s%d -->' % (kind, rid))
        c.polygon(pts, fill, stroke="#999", cls="junction" if kind == 'J' else "corridor")
    _endpoints(c, inst)
    return c.svg()


def render_path(inst, path):
    c = _Canvas(inst)
    _obstacles(c, inst)
    c.polyline(path, "#d62728", cls="path")
    _endpoints(c, inst)
    return c.svg()


def generators_from_trace(lines):
    """(point, distance) of every vertex settled in a JSON-lines trace."""
    out = []
    for ln in lines:
        if not ln.strip():
            continue
        rec = json.loads(ln)
        if rec["type"] == "III" and "point" in rec["payload"]:
            out.append((tuple(rec["payload"]["point"]), rec["d"]))
    return out


def _visible(inst, g, X):
    """Mask of sample points X (k x 2) whose segment to g avoids obstacle interiors."""
    f = inst.scale
    ok = np.ones(len(X), dtype=bool)
    gx, gy = g
    for poly in inst.polygons():
        P = np.asarray(poly, dtype=float) * f
        A, B = P, np.roll(P, -1, axis=0)
        for (ax, ay), (bx, by) in zip(A, B):
            d1 = (bx - ax) * (gy - ay) - (by - ay) * (gx - ax)
            d2 = (bx - ax) * (X[:, 1] - ay) - (by - ay) * (X[:, 0] - ax)
            d3 = (X[:, 0] - gx) * (ay - gy) - (X[:, 1] - gy) * (ax - gx)
            d4 = (X[:, 0] - gx) * (by - gy) - (X[:, 1] - gy) * (bx - gx)
            ok &= ~((d1 * d2 < 0) & (d3 * d4 < 0))
    inside = np.array([inst.in_free_space((x / f, y / f), strict=False) for x, y in X])
    return ok & inside


def wavefront_arcs(inst, gens, d, samples=256):
    """Arcs of the wavefront at radius d, one list of points per contiguous run.

    A point x at geodesic distance d is reached through the generator that
    minimises weight + |x - g| over generators visible from x.
    """
    gens = [(g, w) for g, w in gens if w < d]
    arcs = []
    th = np.linspace(0.0, 2 * pi, samples, endpoint=False)
    for g, w in gens:
        r = d - w
        X = np.column_stack([g[0] + r * np.cos(th), g[1] + r * np.sin(th)])
        keep = _visible(inst, g, X)
        for h, u in gens:
            if h == g:
                continue
            dh = u + np.hypot(X[:, 0] - h[0], X[:, 1] - h[1])
            better = dh < d - 1e-9 * (1.0 + d)
            if better.any():
                keep &= ~(better & _visible(inst, h, X))
        if not keep.any():
            continue
        if keep.all():
            arcs.append([tuple(p) for p in X] + [tuple(X[0])])
            continue
        start = int(np.argmin(keep))  # a gap, so runs do not wrap
        run = []
        for j in range(samples):
            i = (start + j) % samples
            if keep[i]:
                run.append(tuple(X[i]))
            elif run:
                arcs.append(run)
                run = []
        if run:
            arcs.append(run)
    return [a for a in arcs if len(a) > 1]


def render_wavefront(inst, trace_lines, d):
    c = _Canvas(inst)
    _obstacles(c, inst)
    for pts in wavefront_arcs(inst, generators_from_trace(trace_lines), d):
        c.arc(pts)
    _endpoints(c, inst)
    return c.svg()


def render(inst, what, path=None, trace_lines=None):
    if what == "domain":
        return render_domain(inst)
    if what == "decomposition":
        return render_decomposition(inst)
    if what == "path":
        if path is None:
            raise RenderError("path render needs a path")
        return render_path(inst, path)
    if what.startswith("wavefront:"):
        try:
            d = float(what.split(":", 1)[1])
        except ValueError:
            raise RenderError("bad radius in %r" % what)
        if not 0.0 <= d < float("inf"):
            raise RenderError("radius must be finite and non-negative")
        return render_wavefront(inst, trace_lines or [], d)
    raise RenderError("unknown render target %r" % what)

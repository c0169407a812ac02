"""Boundary cycles of the explored part of the domain.

The *blob* is the set of junctions/corridors the wavefront has entered.
Its boundary is kept as loops of element occurrences, each oriented with
the blob on its left.  Elements are doors (triangulation edges between
two regions) and corridor walls.  Entering a region through door e
replaces e by the rest of that region's boundary.  A door that ends up on
the boundary from both sides is removed when the wavefront crosses it:
two occurrences on one loop split it, occurrences on two loops merge them.
"""
from ..geom import point_in_polygon, signed_area


class Occ:
    __slots__ = ('elem', 'region', 'verts')

    def __init__(self, elem, region, verts):
        self.elem, self.region, self.verts = elem, region, tuple(verts)

    def __repr__(self):
        return "Occ(%r in %r)" % (self.elem, self.region)


class Loop:
    _next = 0

    def __init__(self, occs, born):
        self.id = Loop._next
        Loop._next += 1
        self.occs = list(occs)
        self.born = born
        self.alive = True
        self.contains_t = None
        self.gateway = None

    def elements(self):
        return [o.elem for o in self.occs]

    def polyline(self, P):
        pts = []
        for o in self.occs:
            for v in o.verts:
                if not pts or pts[-1] != v:
                    pts.append(v)
        if len(pts) > 1 and pts[0] == pts[-1]:
            pts.pop()
        return [P[v] for v in pts]


class Gateway:
    def __init__(self, region, edge, child, parent, restart_time):
        self.region, self.edge = region, edge
        self.child, self.parent = child, parent
        self.restart_time = restart_time
        self.collected = []

    def to_dict(self):
        return {"region": list(self.region), "edge": list(self.edge), "child": self.child,
                "parent": self.parent, "restart_time": self.restart_time}


def region_boundary(decomp, region):
    """Ccw boundary of a region as a list of Occ."""
    tri = decomp.tri
    kind, rid = region
    out = []
    if kind == 'J':
        t = decomp.junctions[rid].triangle
        tv = tri.triangles[t]
        for i in range(3):
            u, v = tv[i], tv[(i + 1) % 3]
            out.append(Occ(('D', _ek(u, v)), region, (u, v)))
        return out
    c = decomp.corridors[rid]
    L0, R0 = c.portals[0]
    out.append(Occ(('D', _ek(L0, R0)), region, (L0, R0)))
    if len(c.right_wall) > 1:
        out.append(Occ(('W', rid, 'R'), region, c.right_wall))
    if not c.dead_end:
        Lk, Rk = c.portals[-1]
        out.append(Occ(('D', _ek(Lk, Rk)), region, (Rk, Lk)))
    if len(c.left_wall) > 1:
        out.append(Occ(('W', rid, 'L'), region, tuple(reversed(c.left_wall))))
    return out


def _ek(u, v):
    return (u, v) if u < v else (v, u)


class BoundaryCycles:
    def __init__(self, decomp, tri_ok):
        self.d = decomp
        self.tri = decomp.tri
        self.tri_ok = tri_ok
        self.blob = set()
        self.loops = []
        self.struck = set()
        self.gateways = []
        self.bct = {}  # loop id -> parent loop id (through a gateway)
        self.log = []
        self.stats = {"splices": 0, "splits": 0, "merges": 0, "degenerate_cycles": 0, "gateways": 0}
        self._useful = {}
        for t, r in decomp.region_of.items():
            if tri_ok[t]:
                self._useful[r] = True

    # ---- queries
    def useful(self, region):
        return self._useful.get(region, False)

    def region_across(self, e, region):
        for t, _ in self.tri.edges[e]:
            r = self.d.region_of[t]
            if r != region:
                return r
        return None

    def live_loops(self):
        return [L for L in self.loops if L.alive]

    def find(self, elem, region):
        for L in self.loops:
            if not L.alive:
                continue
            for i, o in enumerate(L.occs):
                if o.elem == elem and o.region == region:
                    return L, i
        return None, -1

    def locate_t(self, L):
        """Whether t lies in the unexplored area bounded by L."""
        P = self.tri.vertices
        t = P[self.tri.t_index]
        t_regions = {self.d.region_of[x] for x in self.tri.vertex_tris[self.tri.t_index]}
        if t_regions & self.blob:
            return False
        poly = L.polyline(P)
        if len(poly) < 3:
            return False
        inside = point_in_polygon(t, poly) >= 0
        return inside if signed_area(poly) < 0 else not inside

    # ---- evolution
    def start(self, d0):
        tri = self.tri
        s = tri.s_index
        regs = sorted({self.d.region_of[t] for t in tri.vertex_tris[s] if self.tri_ok[t]})
        if not regs:
            return
        r0 = regs[0]
        self.blob.add(r0)
        self.loops.append(Loop(region_boundary(self.d, r0), d0))
        self.log.append(("start", r0))
        self.vertex_strike(s, d0)

    def vertex_strike(self, v, d):
        """Wavefront passes vertex v: enter every useful region around v."""
        results = []
        changed = True
        while changed:
            changed = False
            for e in sorted(self._doors_at(v)):
                t1, t2 = [self.d.region_of[t] for t, _ in self.tri.edges[e]]
                if (t1 in self.blob) == (t2 in self.blob):
                    continue
                a, b = (t1, t2) if t1 in self.blob else (t2, t1)
                if not self.useful(b):
                    continue
                results.append(self.strike(e, a, b, d))
                changed = True
        return results

    def _doors_at(self, v):
        out = set()
        for t in self.tri.vertex_tris[v]:
            tv = self.tri.triangles[t]
            for i in range(3):
                if self.tri.neighbors[t][i] < 0:
                    continue
                e = _ek(tv[(i + 1) % 3], tv[(i + 2) % 3])
                if v in e:
                    r = {self.d.region_of[x] for x, _ in self.tri.edges[e]}
                    if len(r) == 2:
                        out.add(e)
        return out

    def strike(self, e, a, b, d):
        """Door e is crossed from region a into region b at radius d."""
        if e in self.struck:
            return {"kind": "noop"}
        self.struck.add(e)
        elem = ('D', e)
        if b not in self.blob:
            L, i = self.find(elem, a)
            self.blob.add(b)
            if L is None:
                # entered around a vertex that is not on any live loop
                L = Loop(region_boundary(self.d, b), d)
                self.loops.append(L)
                self.stats["splices"] += 1
                return {"kind": "splice", "loop": L.id, "region": b}
            rb = region_boundary(self.d, b)
            k = next(j for j, o in enumerate(rb) if o.elem == elem)
            ins = rb[k + 1:] + rb[:k]
            L.occs[i:i + 1] = ins
            self.stats["splices"] += 1
            self.log.append(("splice", e, b))
            return {"kind": "splice", "loop": L.id, "region": b, "inserted": [o.elem for o in ins]}
        L1, i = self.find(elem, a)
        L2, j = self.find(elem, b)
        if L1 is None or L2 is None:
            return {"kind": "noop"}
        if L1 is L2:
            return self._split(L1, i, j, e, b, d)
        return self._merge(L1, i, L2, j, d)

    def _split(self, L, i, j, e, far, d):
        occs = L.occs
        if i > j:
            i, j = j, i
        part1 = occs[i + 1:j]
        part2 = occs[j + 1:] + occs[:i]
        L.alive = False
        out = []
        for part in (part1, part2):
            if not part:
                self.stats["degenerate_cycles"] += 1
                continue
            nl = Loop(part, d)
            nl.contains_t = self.locate_t(nl)
            self.loops.append(nl)
            out.append(nl)
        self.stats["splits"] += 1
        res = {"kind": "split", "parent": L.id, "loops": [x.id for x in out], "gateway": None}
        if len(out) == 2:
            live_t = [x for x in out if x.contains_t]
            dead = [x for x in out if not x.contains_t]
            if len(live_t) == 1 and len(dead) == 1:
                g = Gateway(far, e, dead[0].id, live_t[0].id, d)
                dead[0].gateway = g
                self.gateways.append(g)
                self.bct[dead[0].id] = live_t[0].id
                self.stats["gateways"] += 1
                res["gateway"] = g.to_dict()
                res["dead"] = dead[0].id
        self.log.append(("split", e, res["loops"]))
        return res

    def _merge(self, L1, i, L2, j, d):
        occs = L1.occs[:i] + L2.occs[j + 1:] + L2.occs[:j] + L1.occs[i + 1:]
        L1.alive = L2.alive = False
        nl = Loop(occs, d)
        nl.contains_t = self.locate_t(nl)
        self.loops.append(nl)
        for k, v in list(self.bct.items()):
            if v in (L1.id, L2.id):
                self.bct[k] = nl.id
        self.stats["merges"] += 1
        self.log.append(("merge", L1.id, L2.id, nl.id))
        return {"kind": "merge", "loops": [L1.id, L2.id], "into": nl.id}

    def dead_regions(self, L):
        """Unexplored useful regions reachable from loop L without the blob."""
        seen = set()
        stack = []
        for o in L.occs:
            if o.elem[0] == 'D':
                r = self.region_across(o.elem[1], o.region)
                if r is not None and r not in self.blob and self.useful(r):
                    stack.append(r)
        adj = self._region_adjacency()
        while stack:
            r = stack.pop()
            if r in seen:
                continue
            seen.add(r)
            for x in adj.get(r, ()):
                if x not in seen and x not in self.blob and self.useful(x):
                    stack.append(x)
        return seen

    def _region_adjacency(self):
        if not hasattr(self, '_adj'):
            adj = {}
            for e, lst in self.tri.edges.items():
                if len(lst) != 2:
                    continue
                r1, r2 = self.d.region_of[lst[0][0]], self.d.region_of[lst[1][0]]
                if r1 != r2:
                    adj.setdefault(r1, set()).add(r2)
                    adj.setdefault(r2, set()).add(r1)
            self._adj = adj
        return self._adj

    def check(self):
        """Structural invariants: loops chain end-to-start, blob on the left."""
        for L in self.live_loops():
            occs = L.occs
            for k in range(len(occs)):
                a, b = occs[k], occs[(k + 1) % len(occs)]
                if a.verts[-1] != b.verts[0]:
                    return False
                if a.region not in self.blob:
                    return False
        return True

"""Junction/corridor decomposition of a triangulated domain.

Dual vertices of degree 3 are junctions.  Everything else splits into
maximal dual paths (corridors).  A corridor is a sleeve of triangles
entered through a door; its two side walls are obstacle polylines and its
hourglass chains are the shortest paths between door endpoints.
"""
from dataclasses import dataclass, field
from math import hypot

import networkx as nx

from .geom import orient, is_convex_chain, dist


class DecompositionError(ValueError):
    pass


@dataclass
class Junction:
    id: int
    triangle: int
    doors: list  # edge keys (u, v), u < v
    corridors: list  # corridor ids across each door


@dataclass
class Funnel:
    apex: int
    chains: tuple  # two vertex-id lists ending at the apex


@dataclass
class Corridor:
    id: int
    triangles: list
    doors: list  # up to two edge keys, entry first
    door_sides: list  # (left, right) vertex ids per door, seen from inside
    ends: list  # junction id per door side (None for a dead end)
    left_wall: list = field(default_factory=list)
    right_wall: list = field(default_factory=list)
    kind: str = "open"
    chains: list = field(default_factory=list)  # vertex-id lists
    funnels: list = field(default_factory=list)
    apex_distance: float = 0.0
    dead_end: bool = False
    portals: list = field(default_factory=list)

    @property
    def degenerate(self):
        return not self.triangles


class Decomposition:
    def __init__(self, tri, junctions, corridors, region_of):
        self.tri = tri
        self.junctions = junctions
        self.corridors = corridors
        self.region_of = region_of  # triangle -> ('J', id) | ('C', id)
        self.useful_regions = None
        self.s_regions = self._site_regions(tri.s_index)
        self.t_regions = self._site_regions(tri.t_index)
        self.door_regions = {}
        for j in junctions:
            for e in j.doors:
                self.door_regions.setdefault(e, set()).add(('J', j.id))
        for c in corridors:
            for e in c.doors:
                self.door_regions.setdefault(e, set()).add(('C', c.id))

    def _site_regions(self, v):
        if v is None or v < 0:
            return []
        return sorted({self.region_of[t] for t in self.tri.vertex_tris[v]})

    def graph(self):
        """Corridor graph: junctions are vertices, corridors are edges."""
        G = nx.MultiGraph()
        for j in self.junctions:
            G.add_node(('J', j.id))
        for c in self.corridors:
            ends = [e for e in c.ends if e is not None]
            if len(ends) == 2:
                G.add_edge(('J', ends[0]), ('J', ends[1]), key=c.id)
        return G

    def is_useful(self, region):
        return self.useful_regions is None or region in self.useful_regions

    def useful_triangles(self):
        return [t for t in range(len(self.tri.triangles)) if self.is_useful(self.region_of[t])]

    def summary(self):
        return {
            "junctions": len(self.junctions),
            "corridors": sum(1 for c in self.corridors if not c.degenerate),
            "degenerate_corridors": sum(1 for c in self.corridors if c.degenerate),
            "closed": sum(1 for c in self.corridors if c.kind == "closed" and not c.dead_end),
            "dead_ends": sum(1 for c in self.corridors if c.dead_end),
            "useful": None if self.useful_regions is None else len(self.useful_regions),
        }

    def to_dict(self):
        P = self.tri.vertices
        pt = lambda v: [P[v][0], P[v][1]]
        out = {"junctions": [], "corridors": [], "summary": self.summary()}
        for j in self.junctions:
            out["junctions"].append({"id": j.id, "triangle": j.triangle, "doors": [[pt(u), pt(v)] for u, v in j.doors],
                                     "corridors": j.corridors,
                                     "useful": self.is_useful(('J', j.id))})
        for c in self.corridors:
            out["corridors"].append({
                "id": c.id, "triangles": c.triangles, "kind": c.kind, "dead_end": c.dead_end,
                "doors": [[pt(u), pt(v)] for u, v in c.doors], "ends": c.ends,
                "chains": [[pt(v) for v in ch] for ch in c.chains],
                "apices": [pt(f.apex) for f in c.funnels],
                "apex_distance": c.apex_distance,
                "useful": self.is_useful(('C', c.id)),
            })
        return out


def _ekey(u, v):
    return (u, v) if u < v else (v, u)


def build_decomposition(tri, mark=True):
    T = len(tri.triangles)
    deg = [sum(1 for s in tri.neighbors[t] if s >= 0) for t in range(T)]
    junction_of = {}
    junctions = []
    for t in range(T):
        if deg[t] == 3:
            junction_of[t] = len(junctions)
            junctions.append(Junction(len(junctions), t, [], []))
    region_of = {t: ('J', junction_of[t]) for t in junction_of}
    corridors = []
    seen = set()
    # corridors seeded from junction doors, then leftover components (cycles)
    for j in junctions:
        t = j.triangle
        tv = tri.triangles[t]
        for i in range(3):
            s = tri.neighbors[t][i]
            e = _ekey(tv[(i + 1) % 3], tv[(i + 2) % 3])
            j.doors.append(e)
            if s in junction_of:
                # two adjacent junctions: a corridor without triangles
                key = ('JJ', e)
                if key in seen:
                    cid = next(c.id for c in corridors if c.degenerate and c.doors[0] == e)
                else:
                    seen.add(key)
                    cid = len(corridors)
                    a, b = tv[(i + 1) % 3], tv[(i + 2) % 3]
                    corridors.append(Corridor(cid, [], [e, e], [(a, b), (b, a)], [j.id, junction_of[s]]))
                j.corridors.append(cid)
                continue
            if s in region_of:
                j.corridors.append(region_of[s][1])
                continue
            cid = len(corridors)
            c = _walk(tri, t, i, junction_of, region_of, cid, j.id)
            corridors.append(c)
            j.corridors.append(cid)
    for t in range(T):
        if t not in region_of:
            raise DecompositionError("dual component without junctions")
    # close the bookkeeping for corridors ending at a second junction
    for c in corridors:
        if not c.degenerate and len(c.doors) == 2 and c.ends[1] is None:
            raise DecompositionError("corridor end not resolved")
        _hourglass(tri, c)
    d = Decomposition(tri, junctions, corridors, region_of)
    if mark:
        mark_useful(d)
    return d


def _walk(tri, jt, i, junction_of, region_of, cid, jid):
    """Follow the sleeve starting across edge i of junction triangle jt."""
    tv = tri.triangles[jt]
    a, b = tv[(i + 1) % 3], tv[(i + 2) % 3]
    t = tri.neighbors[jt][i]
    # inside t the door is traversed b->a ccw, so facing inward b is left
    L, R = b, a
    c = Corridor(cid, [], [_ekey(a, b)], [(L, R)], [jid, None])
    c.portals.append((L, R))
    prev = jt
    while True:
        c.triangles.append(t)
        region_of[t] = ('C', cid)
        nxt = [(k, s) for k, s in enumerate(tri.neighbors[t]) if s >= 0 and s != prev]
        ttv = tri.triangles[t]
        apex = next(v for v in ttv if v != L and v != R)
        if not nxt:
            c.dead_end = True
            c.portals.append((apex, apex))
            break
        k, s = nxt[0]
        u, v = ttv[(k + 1) % 3], ttv[(k + 2) % 3]
        if L in (u, v):
            R = apex
        else:
            L = apex
        if s in junction_of:
            c.doors.append(_ekey(u, v))
            c.door_sides.append((L, R))
            c.ends[1] = junction_of[s]
            c.portals.append((L, R))
            break
        if s in region_of:
            raise DecompositionError("sleeve re-entered")
        c.portals.append((L, R))
        prev, t = t, s
    c.left_wall = _dedup([p[0] for p in c.portals])
    c.right_wall = _dedup([p[1] for p in c.portals])
    return c


def _dedup(seq):
    out = []
    for v in seq:
        if not out or out[-1] != v:
            out.append(v)
    return out


def funnel_path(P, portals, start, end):
    """Shortest path through a sequence of (left, right) portals.

    Vertex ids are used throughout; start/end are vertex ids.  Classic
    string pulling with exact orientation tests.
    """
    ports = [(start, start)] + list(portals) + [(end, end)]
    path = [start]
    apex, left, right = start, start, start
    ai = li = ri = 0
    i = 1
    n = len(ports)
    guard = 0
    while i < n:
        guard += 1
        if guard > 10 * n * n + 100:
            raise DecompositionError("funnel did not terminate")
        pl, pr = ports[i]
        # right side
        if orient(P[apex], P[right], P[pr]) >= 0:
            if apex == right or orient(P[apex], P[left], P[pr]) < 0:
                right, ri = pr, i
            else:
                if path[-1] != left:
                    path.append(left)
                apex, ai = left, li
                left = right = apex
                li = ri = ai
                i = ai + 1
                continue
        # left side
        if orient(P[apex], P[left], P[pl]) <= 0:
            if apex == left or orient(P[apex], P[right], P[pl]) > 0:
                left, li = pl, i
            else:
                if path[-1] != right:
                    path.append(right)
                apex, ai = right, ri
                left = right = apex
                li = ri = ai
                i = ai + 1
                continue
        i += 1
    if path[-1] != end:
        path.append(end)
    return path


def path_len(P, ids):
    return sum(dist(P[a], P[b]) for a, b in zip(ids, ids[1:]))


def _hourglass(tri, c):
    P = tri.vertices
    if c.degenerate:
        c.kind = "open"
        return
    inner = c.portals[1:-1]
    if c.dead_end:
        L0, R0 = c.portals[0]
        tip = c.portals[-1][0]
        left = funnel_path(P, inner, L0, tip)
        right = funnel_path(P, inner, R0, tip)
        c.kind = "closed"
        c.chains = [left, right]
        shared = [v for v in left if v in set(right)]
        apex = shared[0] if shared else tip
        c.funnels = [Funnel(apex, (left[:left.index(apex) + 1], right[:right.index(apex) + 1]))]
        c.apex_distance = 0.0
        return
    (L0, R0), (Lk, Rk) = c.portals[0], c.portals[-1]
    left = funnel_path(P, inner, L0, Lk)
    right = funnel_path(P, inner, R0, Rk)
    rs = set(right)
    shared = [v for v in left if v in rs]
    if not shared:
        c.kind = "open"
        c.chains = [left, right]
        c.funnels = []
        c.apex_distance = 0.0
        return
    a1, a2 = shared[0], shared[-1]
    c.kind = "closed"
    c.chains = [left, right]
    i1, i2 = left.index(a1), left.index(a2)
    j1, j2 = right.index(a1), right.index(a2)
    c.funnels = [Funnel(a1, (left[:i1 + 1], right[:j1 + 1])), Funnel(a2, (left[i2:], right[j2:]))]
    c.apex_distance = path_len(P, left[i1:i2 + 1])


def hourglass_of_corridor(tri, c):
    _hourglass(tri, c)
    return c.chains, c.funnels


def chains_convex(tri, c):
    """Each hourglass/funnel chain turns uniformly (as a polyline)."""
    P = tri.vertices
    chains = list(c.chains)
    for f in c.funnels:
        chains.extend(f.chains)
    for ch in chains:
        pts = [P[v] for v in ch]
        if len(pts) >= 3 and not is_convex_chain(_drop_collinear(pts)):
            return False
    return True


def _drop_collinear(pts):
    out = []
    for p in pts:
        while len(out) >= 2 and orient(out[-2], out[-1], p) == 0:
            out.pop()
        out.append(p)
    return out


def _funnel_side_chains(c):
    return c.chains


def region_graph(d):
    """Auxiliary graph for usefulness: junction and corridor nodes plus S, T.

    A corridor holding s or t is subdivided into one node per triangle so
    that a route leaving it through one door and re-entering through the
    other still counts as simple.
    """
    tri = d.tri
    sites = set(tri.vertex_tris[tri.s_index]) | set(tri.vertex_tris[tri.t_index])
    H = nx.Graph()
    S, Tn = ('S',), ('T',)
    H.add_nodes_from([S, Tn])
    node_of = {}
    for j in d.junctions:
        H.add_node(('J', j.id))
        node_of[j.triangle] = ('J', j.id)
    for c in d.corridors:
        if c.degenerate:
            H.add_node(('C', c.id))
            H.add_edge(('C', c.id), ('J', c.ends[0]))
            H.add_edge(('C', c.id), ('J', c.ends[1]))
            continue
        split = any(t in sites for t in c.triangles)
        nodes = [('C', c.id, i) if split else ('C', c.id) for i in range(len(c.triangles))]
        for t, nd in zip(c.triangles, nodes):
            node_of[t] = nd
            H.add_node(nd)
        for u, v in zip(nodes, nodes[1:]):
            if u != v:
                H.add_edge(u, v)
        if c.ends[0] is not None:
            H.add_edge(nodes[0], ('J', c.ends[0]))
        if c.ends[1] is not None:
            H.add_edge(nodes[-1], ('J', c.ends[1]))
    for t in tri.vertex_tris[tri.s_index]:
        H.add_edge(S, node_of[t])
    for t in tri.vertex_tris[tri.t_index]:
        H.add_edge(Tn, node_of[t])
    return H


def mark_useful(d):
    """Mark junctions/corridors lying on some simple s-t path."""
    H = region_graph(d)
    S, Tn = ('S',), ('T',)
    if S not in H or Tn not in H or not nx.has_path(H, S, Tn):
        raise DecompositionError("no path exists")
    H.add_edge(S, Tn)
    useful = set()
    for comp in nx.biconnected_components(H):
        if S in comp and Tn in comp:
            useful |= {nd[:2] for nd in comp if nd not in (S, Tn)}
    d.useful_regions = useful
    return d


def region_polygon(d, region):
    """Vertex-id boundary loop (ccw) of a junction or corridor."""
    tri = d.tri
    kind, rid = region
    if kind == 'J':
        return list(tri.triangles[d.junctions[rid].triangle])
    c = d.corridors[rid]
    if c.degenerate:
        return list(c.doors[0])
    loop = list(c.right_wall)
    loop += list(reversed(c.left_wall))
    return _dedup(loop)


def useful_cells(tri):
    """Triangles and vertices that can lie on a shortest s-t path.

    Cells are triangles plus the vertices a taut path may pass through
    (s, t and polygon vertices whose free-space angle is at least pi).  A
    shortest path visits each cell at most once, so every cell it touches
    lies in the biconnected block of this graph that holds a virtual s-t
    edge.  Returns (triangle flags, vertex flags).
    """
    P = tri.vertices
    H = nx.Graph()
    T = len(tri.triangles)
    H.add_nodes_from(range(T))
    for t in range(T):
        for s in tri.neighbors[t]:
            if s > t:
                H.add_edge(t, s)
    pivots = []
    for v in range(len(P)):
        nb = tri.poly_neighbors(v)
        if nb is None:
            if v in (tri.s_index, tri.t_index):
                pivots.append(v)
            continue
        if orient(P[nb[0]], P[v], P[nb[1]]) <= 0:
            pivots.append(v)
    for v in pivots:
        for t in tri.vertex_tris[v]:
            H.add_edge(('v', v), t)
    S, Tn = ('v', tri.s_index), ('v', tri.t_index)
    if S not in H or Tn not in H or not nx.has_path(H, S, Tn):
        raise DecompositionError("no path exists")
    H.add_edge(S, Tn)
    keep = set()
    for comp in nx.biconnected_components(H):
        if S in comp and Tn in comp:
            keep |= comp
    tri_ok = [t in keep for t in range(T)]
    vert_ok = [('v', v) in keep for v in range(len(P))]
    return tri_ok, vert_ok

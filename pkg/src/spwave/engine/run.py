"""Event loop.

One heap holds every pending item keyed by the radius at which it
happens, ties broken by event type (IV < I < II < III < plain window) and
then by insertion order:

* window items: a window waiting to be clipped and pushed through its
  triangle.  The first window to cross a door between two regions is a
  Type I event (entering a junction) or Type II (entering a corridor);
* vertex items: an obstacle vertex (or s) becoming a generator.  Unless it
  continues a bunch along its chain this is a Type III tangent strike;
* Type IV items: a window eliminated on a door, one per (bunch, door).

Boundary cycles, gateways, bunches and associations are maintained from
these events; the distances themselves come from the window core.
"""
import heapq
import json
import logging
from math import hypot, inf

from ..corridors import build_decomposition, useful_cells, DecompositionError
from ..domain import PathResult
from ..geom import point_in_polygon
from ..hulltrees import PointsLeaf
from ..triangulate import triangulate
from .bunches import BunchBook, SOURCE
from .core import Propagator
from .cycles import BoundaryCycles
from .sections import Association, merge

log = logging.getLogger("spwave.engine")

ORDER = {"IV": 0, "I": 1, "II": 2, "III": 3, "W": 4}


class EngineError(RuntimeError):
    pass


class Engine:
    def __init__(self, inst, rewind_mode="offset", trace=None, tri=None, eager_type4=False):
        if rewind_mode not in ("offset", "replay"):
            raise ValueError("rewind mode must be offset or replay")
        self.inst = inst
        self.mode = rewind_mode
        self.trace = trace
        self.eager_type4 = eager_type4
        self.tri = tri or triangulate(inst)
        tri = self.tri
        try:
            self.tri_ok, self.pivot_ok = useful_cells(tri)
            self.decomp = build_decomposition(tri)
        except DecompositionError as e:
            raise EngineError("disconnected") from e
        self.scale = max(inst.diameter(), 1e-300)
        self.prop = Propagator(tri, self.tri_ok, self.pivot_ok, self.scale)
        n = len(tri.vertices)
        self.D = [inf] * n
        self.pred = [-1] * n
        self.ver = [0] * n
        s, t = tri.s_index, tri.t_index
        self.s, self.t = s, t
        self.gen = [self.pivot_ok[v] and tri.reflex[v] for v in range(n)]
        self.gen[s] = True
        self.gen[t] = False
        self.heap = []
        self.seq = 0
        self.side = None  # side heap while exhausting a dead region
        self.book = BunchBook(tri, self.pivot_ok)
        self.cycles = BoundaryCycles(self.decomp, self.tri_ok)
        self.door_of = {}
        for e, lst in tri.edges.items():
            if len(lst) == 2:
                r1, r2 = self.decomp.region_of[lst[0][0]], self.decomp.region_of[lst[1][0]]
                if r1 != r2:
                    self.door_of[e] = True
        self.type4_seen = set()
        self.region_bunches = {}
        self.apex_expect = {}
        self.counters = {"events_I": 0, "events_II": 0, "events_III": 0, "events_IV": 0,
                         "windows": 0, "window_pops": 0, "stale": 0, "splits": 0, "merges": 0,
                         "gateways": 0, "side_pops": 0, "reinjected": 0, "assoc_calls": 0,
                         "apex_checks": 0, "apex_matches": 0, "pointloc_scans": 0, "last_key": 0.0,
                         "monotone_breaks": 0, "assoc_linear_scans": 0}
        self._apices()

    # ------------------------------------------------------------ helpers
    def _apices(self):
        for c in self.decomp.corridors:
            if c.kind == "closed" and not c.dead_end and len(c.funnels) == 2 and \
                    self.decomp.is_useful(('C', c.id)):
                a1, a2 = c.funnels[0].apex, c.funnels[1].apex
                self.apex_expect.setdefault(a1, []).append((a2, c.apex_distance))
                self.apex_expect.setdefault(a2, []).append((a1, c.apex_distance))

    def _push(self, key, typ, item, heap=None):
        self.seq += 1
        heapq.heappush(self.heap if heap is None else heap, (key, ORDER[typ], self.seq, typ, item))

    def _push_window(self, W):
        self.counters["windows"] += 1
        self.book.ref(self.book.bunch_of(W.g))
        typ = "W"
        e = (W.p, W.q) if W.p < W.q else (W.q, W.p)
        if e in self.door_of and e not in self.cycles.struck:
            typ = "I" if self.decomp.region_of[W.tri][0] == 'J' else "II"
        target = self.side if self.side is not None and W.tri in self.side_tris else None
        if self.side is not None and target is None:
            self.counters["reinjected"] += 1
        self._push(W.key, typ, W, target)

    def _candidate(self, x, dist, g):
        if dist < self.D[x] - 1e-12 * (1.0 + dist):
            self.D[x] = dist
            self.pred[x] = g
            if self.gen[x]:
                self.ver[x] += 1
                self.book.ref(self.book.bunch_of(g))
                item = (x, self.ver[x], g)
                target = self.side if self.side is not None and self._vertex_in_side(x) else None
                self._push(dist, "III", item, target)

    def _vertex_in_side(self, x):
        return any(t in self.side_tris for t in self.tri.vertex_tris[x])

    def _emit_trace(self, d, typ, payload):
        if self.trace is None:
            return
        snap = {k: self.counters[k] for k in ("events_I", "events_II", "events_III", "events_IV")}
        rec = {"d": d * self.inst.scale, "type": typ, "payload": payload, "counters": snap}
        self.trace.append(json.dumps(rec, sort_keys=True))

    # ------------------------------------------------------------ run
    def run(self):
        s, t = self.s, self.t
        self.D[s] = 0.0
        self.cycles.start(0.0)
        self._push(0.0, "III", (s, 0, None))
        self.book.ref(SOURCE)
        last = -inf
        while self.heap:
            key, _, _, typ, item = self.heap[0]
            if key >= self.D[t]:
                break
            heapq.heappop(self.heap)
            if key < last - 1e-9 * (1.0 + abs(last)):
                self.counters["monotone_breaks"] += 1
            last = max(last, key)
            self.counters["last_key"] = last * self.inst.scale
            self._dispatch(key, typ, item)
        if self.D[t] == inf:
            raise EngineError("disconnected")
        return self._result()

    def _dispatch(self, key, typ, item):
        if typ == "III":
            self.handle_type3(key, item)
        elif typ == "IV":
            self.handle_type4(key, item)
        else:
            self.handle_window(key, typ, item)

    # ------------------------------------------------------------ handlers
    def handle_window(self, key, typ, W):
        bid = self.book.bunch_of(W.g)
        if W.ver != self.ver[W.g]:
            self.counters["stale"] += 1
            self.book.unref(bid)
            return
        self.counters["window_pops"] += 1
        e = (W.p, W.q) if W.p < W.q else (W.q, W.p)
        pieces = self.prop.trim(W)
        if e in self.door_of and e not in self.cycles.struck and pieces:
            a = self.decomp.region_of[self._from_tri(W)]
            b = self.decomp.region_of[W.tri]
            if b[0] == 'J':
                self.handle_type1(key, e, a, b, W)
            else:
                self.handle_type2(key, e, a, b, W)
        if not pieces and e in self.door_of:
            tag = (bid, e)
            if tag not in self.type4_seen:
                self.type4_seen.add(tag)
                self.book.ref(bid)
                if self.eager_type4:
                    self.handle_type4(key, (bid, e, W.g))
                else:
                    self._push(key, "IV", (bid, e, W.g), self.side if self.side is not None else None)
        for t0, t1 in pieces:
            Wp = self.prop.make(W.g, W.ver, W.gx, W.gy, W.w, W.p, W.q, t0, t1, W.tri)
            self.prop.record(Wp)
            self.region_bunches.setdefault(self.decomp.region_of[W.tri], set()).add(bid)
            kids, cands = self.prop.propagate(Wp)
            for x, dx in cands:
                self._candidate(x, dx, W.g)
            for K in kids:
                self._push_window(K)
        self.book.unref(bid)

    def _from_tri(self, W):
        for t, _ in self.tri.edges[(W.p, W.q) if W.p < W.q else (W.q, W.p)]:
            if t != W.tri:
                return t
        return W.tri

    def handle_type1(self, key, e, a, b, W):
        self.counters["events_I"] += 1
        res = self._strike(key, e, a, b)
        self._emit_trace(key, "I", {"door": list(e), "from": list(a), "into": list(b), "cycle": res["kind"]})

    def handle_type2(self, key, e, a, b, W):
        self.counters["events_II"] += 1
        res = self._strike(key, e, a, b)
        self._emit_trace(key, "II", {"door": list(e), "from": list(a), "into": list(b), "cycle": res["kind"]})

    def _strike(self, key, e, a, b):
        res = self.cycles.strike(e, a, b, key)
        if res["kind"] in ("split", "merge"):
            self._associate(key, a, b)
        if res["kind"] == "merge":
            self.counters["merges"] += 1
        if res["kind"] == "split":
            self.counters["splits"] += 1
            if res.get("gateway"):
                self.counters["gateways"] += 1
                if self.mode == "offset" and self.side is None:
                    dead = next(L for L in self.cycles.loops if L.id == res["dead"])
                    self._exhaust(key, dead)
        return res

    def handle_type3(self, key, item):
        v, ver, g = item
        gb = self.book.bunch_of(g) if g is not None else SOURCE
        if ver != self.ver[v]:
            self.counters["stale"] += 1
            self.book.unref(gb)
            return
        kind, info = "source", None
        if v != self.s:
            kind, info = self.book.settle(v, g, key)
            if kind == "strike":
                self.counters["events_III"] += 1
        f = self.inst.scale
        x, y = self.tri.vertices[v]
        self._emit_trace(key, "III", {"vertex": v, "point": [x * f, y * f], "settle": kind,
                                      "case": info["case"] if kind == "strike" else None})
        for other, L in self.apex_expect.get(v, ()):
            self.apex_expect.setdefault(('due', other), []).append(key + L)
        due = self.apex_expect.get(('due', v))
        if due:
            self.counters["apex_checks"] += 1
            if any(abs(x - key) <= 1e-9 * (1.0 + key) for x in due):
                self.counters["apex_matches"] += 1
        self.cycles.vertex_strike(v, key)
        ws, cands = self.prop.emit(v, ver, self.D[v])
        for x, dx in cands:
            self._candidate(x, dx, v)
        for W in ws:
            self._push_window(W)
        self.book.unref(gb)

    def handle_type4(self, key, item):
        bid, e, g = item
        self.counters["events_IV"] += 1
        retired = self.book.unref(bid)
        self._emit_trace(key, "IV", {"bunch": bid, "door": list(e), "retired": bool(retired)})

    # ------------------------------------------------------------ splits
    def _exhaust(self, key, dead):
        """Offset mode: finish the dead region on a side heap right away.

        Pending items inside the dead region move to the side heap; items
        produced there that leave the region go back to the main heap at
        their own (absolute) keys.
        """
        regions = self.cycles.dead_regions(dead)
        if not regions:
            return
        tris = {t for t, r in self.decomp.region_of.items() if r in regions}
        self.side_tris = tris
        side, keep = [], []
        for ent in self.heap:
            k, o, sq, typ, item = ent
            inside = (typ in ("W", "I", "II") and item.tri in tris) or \
                     (typ == "III" and any(t in tris for t in self.tri.vertex_tris[item[0]]) and item[0] != self.t)
            (side if inside else keep).append(ent)
        heapq.heapify(side)
        heapq.heapify(keep)
        self.heap = keep
        self.side = side
        g = dead.gateway
        while side:
            k, _, _, typ, item = heapq.heappop(side)
            self.counters["side_pops"] += 1
            self._dispatch(k, typ, item)
            if typ in ("W", "I", "II") and g is not None:
                g.collected.append(item.g)
        self.side = None
        self.side_tris = None

    def _associate(self, key, a, b):
        """Re-pair the bunches on both sides with the elements near the strike."""
        live = {x.id: x for lst in self.book.live.values() for x in lst}
        sw1 = [live[i] for i in sorted(self.region_bunches.get(a, ())) if i in live][:6]
        sw2 = [live[i] for i in sorted(self.region_bunches.get(b, ())) if i in live][:6]
        if not sw1 and not sw2:
            return
        P = self.tri.vertices
        elems = []
        for L in self.cycles.live_loops():
            for o in L.occs:
                if o.region in (a, b):
                    elems.append(PointsLeaf([P[v] for v in o.verts], tag=o.elem))
        if not elems:
            return
        assoc = Association(elems[:12])
        merge(sw1, sw2, assoc, key, check=True)
        self.counters["assoc_calls"] += assoc.stats["assoc_calls"]
        self.counters["assoc_linear_scans"] += assoc.stats["monotone_violations"]

    # ------------------------------------------------------------ output
    def _result(self):
        t, s = self.t, self.s
        P = self.tri.vertices
        path = [t]
        g = self.pred[t]
        guard = 0
        while g != -1:
            path.append(g)
            if g == s:
                break
            g = self.pred[g]
            guard += 1
            if guard > len(P):
                raise EngineError("predecessor cycle")
        path.reverse()
        f = self.inst.scale
        pts = [(P[v][0] * f, P[v][1] * f) for v in path]
        if self.counters["assoc_linear_scans"]:
            log.warning("association order was not monotone %d times; fell back to linear scans",
                        self.counters["assoc_linear_scans"])
        c = dict(self.counters)
        c.update({k: v for k, v in self.book.stats.items()})
        c["bunch_peak"] = self.book.peak
        c.update({"cycle_" + k: v for k, v in self.cycles.stats.items()})
        c["trim_pieces"] = sum(len(v) for v in self.prop.processed.values())
        return PathResult(self.D[t] * f, pts, c, list(self.trace) if self.trace is not None else None)


def run(inst, rewind_mode="offset", trace=None, **kw):
    """Shortest s-t path; raises EngineError("disconnected") if none."""
    return Engine(inst, rewind_mode=rewind_mode, trace=trace, **kw).run()

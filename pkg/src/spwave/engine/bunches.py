"""Bunch bookkeeping driven by vertex settles.

Obstacle vertices whose free-space angle exceeds pi form maximal runs
along each polygon; each run, read in either direction, is a convex chain
that bunches live on.  When a chain vertex settles through its chain
predecessor the owning bunch simply continues; any other settle is a
tangent strike and goes through the four initialization cases.
"""
import itertools
from math import atan2, pi, inf

from ..hulltrees import BHT, bht_tangent_strike, StrikeAction

SOURCE = -1


class BunchBook:
    def __init__(self, tri, pivot_ok):
        self.tri = tri
        P = tri.vertices
        self.chains = {}    # (run id, dir) -> vertex ids in chain order
        self.where = {}     # vertex -> {dir: (chain key, position)}
        run_id = 0
        base = 0
        for p, k in enumerate(tri.poly_sizes):
            ids = list(range(base, base + k))
            base += k
            refl = [tri.reflex[v] for v in ids]
            if all(refl):
                runs = [ids]
            else:
                start = next(i for i in range(k) if not refl[i])
                runs, cur = [], []
                for j in range(1, k + 1):
                    v = ids[(start + j) % k]
                    if tri.reflex[v]:
                        cur.append(v)
                    elif cur:
                        runs.append(cur)
                        cur = []
                if cur:
                    runs.append(cur)
            for r in runs:
                for dname, seq in (('f', r), ('b', list(reversed(r)))):
                    key = (run_id, dname)
                    self.chains[key] = seq
                    for pos, v in enumerate(seq):
                        self.where.setdefault(v, {})[dname] = (key, pos)
                run_id += 1
        self.live = {}      # chain key -> list of live BHTs
        self.owner = {}     # vertex -> bunch id
        self.by_id = {}
        self.refs = {}      # bunch id -> queued windows/emissions referring to it
        self.retired = set()
        self.peak = 0
        self.stats = {"bunches_created": 0, "continuations": 0, "case1": 0, "case2": 0, "case3": 0,
                      "case4": 0, "formula_mismatch": 0, "retired": 0, "bridge_resplits": 0}
        self.refs[SOURCE] = 0
        self.ids = itertools.count()

    def live_count(self):
        return sum(len(v) for v in self.live.values()) + (1 if self.refs.get(SOURCE, 0) > 0 else 0)

    def bunch_of(self, v):
        return self.owner.get(v, SOURCE)

    def ref(self, bid, k=1):
        self.refs[bid] = self.refs.get(bid, 0) + k

    def unref(self, bid):
        n = self.refs.get(bid, 0) - 1
        self.refs[bid] = n
        if n <= 0 and bid != SOURCE and bid in self.by_id and bid not in self.retired:
            self._retire(bid)
            return True
        return False

    def _retire(self, bid):
        b = self.by_id[bid]
        for key, lst in self.live.items():
            if b in lst:
                lst.remove(b)
        self.retired.add(bid)
        self.stats["retired"] += 1

    def _direction(self, v, g):
        """Chain direction the wavefront wraps in when it reaches v from g."""
        P = self.tri.vertices
        prev, nxt = self.tri.poly_neighbors(v)
        rx, ry = P[v][0] - P[g][0], P[v][1] - P[g][1]
        base = atan2(ry, rx)

        def dev(u):
            a = atan2(P[u][1] - P[v][1], P[u][0] - P[v][0]) - base
            return abs((a + pi) % (2 * pi) - pi)
        return 'f' if dev(nxt) <= dev(prev) else 'b'

    def settle(self, v, g, d):
        """v settled at radius d through generator g.  Returns (kind, info)."""
        if v not in self.where or g is None or g < 0:
            return "none", None
        dname = self._direction(v, g)
        if dname not in self.where[v]:
            dname = next(iter(self.where[v]))
        key, pos = self.where[v][dname]
        chain = self.chains[key]
        gb = self.owner.get(g)
        if pos > 0 and chain[pos - 1] == g and gb in self.by_id and gb not in self.retired:
            b = self.by_id[gb]
            if pos in b.indices:
                if abs(b.leaf_weight(pos) - d) > 1e-9 * (1.0 + d):
                    self.stats["formula_mismatch"] += 1
                self.owner[v] = gb
                self.stats["continuations"] += 1
                return "continuation", b
        P = self.tri.vertices
        lst = self.live.setdefault(key, [])
        before = sum(b.tree.resplits for b in lst)
        case, nb, removed = bht_tangent_strike(lst, [P[u] for u in chain], pos, d, striker=P[g], ids=self.ids)
        self.stats["bridge_resplits"] += sum(b.tree.resplits for b in lst + removed) - before
        self.stats["case%d" % case] += 1
        for r in removed:
            self.retired.add(r.id)
        if nb is not None:
            if case == StrikeAction.BUILD:
                self.stats["bunches_created"] += 1
            self.by_id[nb.id] = nb
            self.refs.setdefault(nb.id, 0)
            self.owner[v] = nb.id
        elif case == StrikeAction.VALID:
            holder = next(b for b in lst if pos in b.indices)
            self.owner[v] = holder.id
        else:
            self.owner[v] = gb if gb is not None else SOURCE
        self.peak = max(self.peak, self.live_count())
        return "strike", {"case": case, "chain": key, "z": pos, "bunch": None if nb is None else nb.id}

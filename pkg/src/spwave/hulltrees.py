"""Dynamic hull trees.

A ``HullTree`` is a leaf-oriented AVL tree.  Every node can report the
support-function envelope (see ``geom``) of the wavefront arcs or static
boundary points stored below it, at a given radius.  Each node carries a
lazy ``offset`` that shifts the weights of its whole subtree, and caches
its envelope keyed by the radius *in its own raw frame* (radius minus the
offsets above and at the node), so pushing an offset down only re-keys a
cache instead of discarding it.

Bridges are the places where the parent envelope switches between pieces
of the left and the right child.  A cache may be kept after a lazy delete
or reused at a larger radius by shifting every piece outward; such a
cache is *dirty*: its hull contains the true hull but may be larger.

``BHT``, ``WST`` and ``BST`` are thin wrappers that fix the leaf type and
the bookkeeping fields.
"""
import heapq
import itertools
from math import inf, hypot, atan2, ceil, log2

from .geom import (Arc, TAU, EPS, envelope_of_pieces, merge_envelopes, shift_pieces, support_point,
                   hull_separation, cone_segment_distance, cone_point_distance, intersect_bisector_segment,
                   dist, dist_point_segment, ang, GeomError)


class HullTreeError(ValueError):
    pass


class Node:
    __slots__ = ('left', 'right', 'item', 'height', 'size', 'offset', 'agg', 'cache', 'dirty', 'tags',
                 'rejoined')

    def __init__(self, item=None, left=None, right=None):
        self.left, self.right, self.item = left, right, item
        self.offset = 0.0
        self.cache = None  # (rho, env, activation)
        self.dirty = False
        self.tags = None
        self.rejoined = False  # connector rebuilt by a split
        self.agg = None
        self.height = 0
        self.size = 1

    @property
    def leaf(self):
        return self.item is not None


# ----------------------------------------------------------------- leaf items

class ArcLeaf:
    """Wavefront segment stored at a leaf."""
    __slots__ = ('arc', 'wp', 'index', 'tag')

    def __init__(self, arc, wp=0.0, index=0, tag=None):
        self.arc, self.wp, self.index = arc, wp, index
        self.tag = tag if tag is not None else arc.tag

    def envelope(self, r):
        a = self.arc
        return envelope_of_pieces(_tagged(a.pieces(r), self.tag))

    def next_activation(self, r):
        return self.arc.weight if self.arc.weight > r else inf

    def __repr__(self):
        return "ArcLeaf(%r, wp=%r)" % (self.arc, self.wp)


class PointsLeaf:
    """Static polyline (a chain or a door); its hull never grows."""
    __slots__ = ('points', 'tag', 'key')

    def __init__(self, points, tag=None, key=None):
        self.points = [tuple(map(float, p)) for p in points]
        self.tag, self.key = tag, key

    def envelope(self, r):
        return envelope_of_pieces([(p[0], p[1], 0.0, 0.0, TAU, self.tag) for p in self.points])

    def next_activation(self, r):
        return inf

    def segments(self):
        if len(self.points) == 1:
            return [(self.points[0], self.points[0])]
        return list(zip(self.points, self.points[1:]))

    def __repr__(self):
        return "PointsLeaf(%r)" % (self.tag,)


def _tagged(pieces, tag):
    return [pc[:5] + (tag,) for pc in pieces]


# ------------------------------------------------------------------ the tree

class HullTree:
    """Leaf-oriented AVL tree of hull items with lazy weight offsets.

    ``leaf_agg`` maps an item to a number; internal nodes keep the max.
    ``touches`` counts node visits made by structural operations.
    ``resplits`` counts splits that cut through a bridge node which an
    earlier split had already rebuilt.
    """

    def __init__(self, items=(), leaf_agg=None):
        self.leaf_agg = leaf_agg
        self.root = None
        self.touches = 0
        self.op_touches = {}
        self.op_nodes = {}
        self.op_rewrites = {}
        self._seen = None
        self._rewritten = None
        self.resplits = 0
        self.root = self._build(list(items))

    # ---- bookkeeping
    def __len__(self):
        return 0 if self.root is None else self.root.size

    def _touch(self, k=1, *nodes):
        self.touches += k
        if self._seen is not None:
            self._seen.update(id(n) for n in nodes if n is not None)

    def _begin(self):
        self._seen, self._rewritten = set(), set()
        return self.touches

    def _end(self, name, t0):
        self.op_touches.setdefault(name, []).append(self.touches - t0)
        self.op_nodes.setdefault(name, []).append(len(self._seen))
        self.op_rewrites.setdefault(name, []).append(len(self._rewritten))
        self._seen = self._rewritten = None

    def _leaf(self, item):
        n = Node(item)
        if self.leaf_agg is not None:
            n.agg = self.leaf_agg(item)
        return n

    def _update(self, n, keep_cache=False):
        self._touch(1, n)
        if self._rewritten is not None:
            self._rewritten.add(id(n))
        l, r = n.left, n.right
        n.height = 1 + max(l.height, r.height)
        n.size = l.size + r.size
        if self.leaf_agg is not None:
            n.agg = max(l.agg - 0.0, r.agg - 0.0)
        if not keep_cache:
            n.cache = None
            n.dirty = False
            n.tags = None

    def _push(self, n):
        """Move n's offset into its children, re-keying n's cache."""
        off = n.offset
        if off == 0.0 or n.leaf:
            return
        self._touch(1, n)
        for c in (n.left, n.right):
            c.offset += off
        n.offset = 0.0
        if n.cache is not None:
            rho, env, act = n.cache
            n.cache = (rho + off, env, act + off)

    def _make(self, l, r):
        n = Node(None, l, r)
        self._update(n)
        return n

    def _build(self, items):
        if not items:
            return None
        leaves = [self._leaf(it) for it in items]

        def rec(lo, hi):
            if hi - lo == 1:
                return leaves[lo]
            mid = (lo + hi + 1) // 2
            return self._make(rec(lo, mid), rec(mid, hi))
        return rec(0, len(leaves))

    # ---- rotations
    def _rot_right(self, n):
        self._push(n)
        l = n.left
        self._push(l)
        top_cache, top_dirty, top_tags = n.cache, n.dirty, n.tags
        n.left = l.right
        self._update(n)
        l.right = n
        self._update(l)
        # same leaf set as before: the old top cache stays valid
        l.cache, l.dirty, l.tags = top_cache, top_dirty, top_tags
        return l

    def _rot_left(self, n):
        self._push(n)
        r = n.right
        self._push(r)
        top_cache, top_dirty, top_tags = n.cache, n.dirty, n.tags
        n.right = r.left
        self._update(n)
        r.left = n
        self._update(r)
        r.cache, r.dirty, r.tags = top_cache, top_dirty, top_tags
        return r

    def _rebalance(self, n):
        bal = n.left.height - n.right.height
        if bal > 1:
            if n.left.right.height > n.left.left.height:
                self._push(n)
                n.left = self._rot_left(n.left)
                self._update(n, keep_cache=True)
            return self._rot_right(n)
        if bal < -1:
            if n.right.left.height > n.right.right.height:
                self._push(n)
                n.right = self._rot_right(n.right)
                self._update(n, keep_cache=True)
            return self._rot_left(n)
        return n

    # ---- join / split
    def _join(self, l, r, mid=None):
        """Concatenate two trees.  ``mid`` is a spare internal node (already
        pushed) reused as the connector so split paths allocate nothing."""
        if l is None:
            return r
        if r is None:
            return l
        self._touch(1, l, r)
        if abs(l.height - r.height) <= 1:
            if mid is None:
                return self._make(l, r)
            mid.left, mid.right, mid.offset = l, r, 0.0
            mid.rejoined = True
            self._update(mid)
            return mid
        if l.height > r.height:
            self._push(l)
            l.right = self._join(l.right, r, mid)
            self._update(l)
            return self._rebalance(l)
        self._push(r)
        r.left = self._join(l, r.left, mid)
        self._update(r)
        return self._rebalance(r)

    def _split(self, n, k):
        """(first k leaves, rest)."""
        if n is None:
            return None, None
        self._touch(1, n)
        if n.leaf:
            return (None, n) if k <= 0 else (n, None)
        if k <= 0:
            return None, n
        if k >= n.size:
            return n, None
        if n.rejoined:
            self.resplits += 1
        self._push(n)
        l, r = n.left, n.right
        if k <= l.size:
            a, b = self._split(l, k)
            return a, self._join(b, r, n)
        a, b = self._split(r, k - l.size)
        return self._join(l, a, n), b

    # ---- public structural operations
    def insert(self, i, item):
        t0 = self._begin()
        if not 0 <= i <= len(self):
            raise HullTreeError("index out of range")
        self.root = self._ins(self.root, i, self._leaf(item))
        self._end('insert', t0)

    def _ins(self, n, i, leaf):
        self._touch(1, n)
        if n is None:
            return leaf
        if n.leaf:
            return self._make(leaf, n) if i == 0 else self._make(n, leaf)
        self._push(n)
        if i <= n.left.size:
            n.left = self._ins(n.left, i, leaf)
        else:
            n.right = self._ins(n.right, i - n.left.size, leaf)
        self._update(n)
        return self._rebalance(n)

    def append(self, item):
        self.insert(len(self), item)

    def delete(self, i, lazy=False):
        """Remove leaf i.  With lazy=True ancestors keep their (now dirty)
        envelope caches; the stale hull still contains the true one."""
        t0 = self._begin()
        if not 0 <= i < len(self):
            raise HullTreeError("index out of range")
        item = self.item_at(i)
        self.root = self._del(self.root, i, lazy, getattr(item, 'tag', None))
        self._end('delete', t0)
        return item

    def _del(self, n, i, lazy, tag):
        self._touch(1, n)
        if n.leaf:
            return None
        self._push(n)
        if i < n.left.size:
            child = self._del(n.left, i, lazy, tag)
            if child is None:
                n.right.offset += n.offset
                return n.right
            n.left = child
        else:
            child = self._del(n.right, i - n.left.size, lazy, tag)
            if child is None:
                n.left.offset += n.offset
                return n.left
            n.right = child
        on_hull = n.tags is None or tag is None or tag in n.tags
        self._update(n, keep_cache=True)
        if n.cache is not None:
            if not on_hull:
                pass  # the removed leaf never touched this hull
            elif lazy:
                n.dirty = True
            else:
                n.cache, n.tags = None, None
        return self._rebalance(n)

    def split(self, k):
        """Split off leaves [k:] into a new tree (same leaf_agg)."""
        t0 = self._begin()
        if not 0 <= k <= len(self):
            raise HullTreeError("split index out of range")
        a, b = self._split(self.root, k)
        self.root = a
        other = HullTree(leaf_agg=self.leaf_agg)
        other.root = b
        self._end('split', t0)
        return other

    def concat(self, other):
        """Append all leaves of other (other is emptied)."""
        t0 = self._begin()
        self.root = self._join(self.root, other.root)
        other.root = None
        self._end('merge', t0)
        return self

    def add_offset(self, delta):
        """Shift the weights of every leaf by delta, in O(1)."""
        if self.root is not None:
            self.root.offset += delta

    # ---- access
    def item_at(self, i):
        n = self.root
        while not n.leaf:
            if i < n.left.size:
                n = n.left
            else:
                i -= n.left.size
                n = n.right
        return n.item

    def leaf_offset(self, i):
        """Accumulated weight shift above and at leaf i."""
        n, off = self.root, 0.0
        while True:
            off += n.offset
            if n.leaf:
                return off
            if i < n.left.size:
                n = n.left
            else:
                i -= n.left.size
                n = n.right

    def items(self):
        out = []
        self._collect(self.root, 0.0, out)
        return out

    def items_with_offsets(self):
        out = []
        self._collect(self.root, 0.0, out, True)
        return out

    def _collect(self, n, off, out, with_off=False):
        if n is None:
            return
        off += n.offset
        if n.leaf:
            out.append((n.item, off) if with_off else n.item)
            return
        self._collect(n.left, off, out, with_off)
        self._collect(n.right, off, out, with_off)

    def height(self):
        return -1 if self.root is None else self.root.height

    def check_balanced(self):
        def rec(n):
            if n is None or n.leaf:
                return True
            if abs(n.left.height - n.right.height) > 1:
                return False
            return rec(n.left) and rec(n.right)
        return rec(self.root)

    # ---- envelopes
    def envelope(self, d, allow_dirty=False):
        """Root envelope at global radius d (dirty caches only if allowed)."""
        if self.root is None:
            return []
        return self._env(self.root, d - self.root.offset, allow_dirty)[0]

    def _env(self, n, r, allow_dirty):
        c = n.cache
        if c is not None:
            if c[0] == r and (allow_dirty or not n.dirty):
                return c[1], c[2], n.dirty
            if allow_dirty and c[0] <= r < c[2]:
                return shift_pieces(c[1], r - c[0]), c[2], True
        if n.leaf:
            env = n.item.envelope(r)
            act = n.item.next_activation(r)
            dirty = False
        else:
            el, al, dl = self._env(n.left, r - n.left.offset, allow_dirty)
            er, ar, dr = self._env(n.right, r - n.right.offset, allow_dirty)
            env = merge_envelopes(el, er)
            # activation thresholds are in each child's raw frame
            act = min(al + n.left.offset, ar + n.right.offset)
            dirty = dl or dr
        n.cache = (r, env, act)
        n.dirty = dirty
        n.tags = {pc[5] for _, _, pc in env}
        return env, act, dirty

    def dirty_count(self):
        def rec(n):
            if n is None:
                return 0
            k = 1 if n.dirty else 0
            return k if n.leaf else k + rec(n.left) + rec(n.right)
        return rec(self.root)

    def refresh(self, d):
        """bridge_refresh for the whole tree: recompute every dirty node."""
        def clear(n):
            if n is None or n.leaf:
                return
            if n.dirty:
                n.cache, n.dirty = None, False
            clear(n.left)
            clear(n.right)
        clear(self.root)
        return self.envelope(d)

    def bridges(self, d, allow_dirty=True):
        """Bridge segments per internal node, preorder: (depth, [(p, q)], dirty)."""
        out = []
        if self.root is None:
            return out

        def rec(n, r, depth):
            if n.leaf:
                return
            el = self._env(n.left, r - n.left.offset, allow_dirty)[0]
            er = self._env(n.right, r - n.right.offset, allow_dirty)[0]
            out.append((depth, bridge_segments(el, er), n.dirty))
            rec(n.left, r - n.left.offset, depth + 1)
            rec(n.right, r - n.right.offset, depth + 1)
        rec(self.root, d - self.root.offset, 0)
        return out

    def dump(self, d):
        """JSON-ready tree dump: nodes with offsets, dirty flags and bridges."""
        def rec(n, r):
            if n is None:
                return None
            rec_ = {"offset": n.offset, "dirty": n.dirty, "size": n.size, "height": n.height}
            if n.leaf:
                rec_["leaf"] = repr(n.item)
                return rec_
            el = self._env(n.left, r - n.left.offset, True)[0]
            er = self._env(n.right, r - n.right.offset, True)[0]
            rec_["bridges"] = [[list(p), list(q)] for p, q in bridge_segments(el, er)]
            rec_["left"] = rec(n.left, r - n.left.offset)
            rec_["right"] = rec(n.right, r - n.right.offset)
            return rec_
        return rec(self.root, d - (self.root.offset if self.root else 0.0))


def bridge_segments(el, er):
    """Transitions between left- and right-child pieces in their merged hull."""
    if not el or not er:
        return []
    left_ids = {id(pc) for _, _, pc in el}
    env = merge_envelopes(el, er)
    out = []
    k = len(env)
    for i in range(k):
        a0, b0, p0 = env[i]
        a1, b1, p1 = env[(i + 1) % k]
        if (id(p0) in left_ids) != (id(p1) in left_ids):
            t = a1 if i + 1 < k else b0
            out.append((support_point(p0, t), support_point(p1, t)))
    return out


# ------------------------------------------------------------------- bunches

class BHT:
    """Bunch hull tree over the wavefront segments of one convex chain.

    Leaf k holds w(v_k) with the stored field ``wp`` equal to minus the
    chain length from the chain start to v_k.  The effective wpupdate of a
    leaf is ``wp - base``; ``base`` changes on splits so that no leaf
    needs rewriting.  A leaf is valid at radius d when
    ``d - shortestdist + wpupdate > 0``.
    """
    _ids = itertools.count()

    def __init__(self, chain, z, shortestdist, tangentstart=None, cones=None, split_flag=False, ids=None):
        verts = [tuple(map(float, v)) for v in chain]
        if not 0 <= z < len(verts):
            raise HullTreeError("start index out of range")
        self._ids = ids if ids is not None else BHT._ids
        self.id = next(self._ids)
        self.chain = verts
        self.z = z
        self.end = len(verts) - 1
        self.shortestdist = float(shortestdist)
        self.tangentstart = tangentstart
        self.split_flag = split_flag
        self.base = 0.0
        wp, acc = [], 0.0
        for k in range(z, len(verts)):
            if k > z:
                acc += dist(verts[k - 1], verts[k])
            wp.append(-acc if acc else 0.0)
        leaves = []
        for j, k in enumerate(range(z, len(verts))):
            lo, span = (cones[k] if cones is not None else _default_cone(verts, k, z, tangentstart))
            arc = Arc(verts[k], self.shortestdist - wp[j], lo, span, tag=(self.id, k))
            leaves.append(ArcLeaf(arc, wp[j], k, tag=('bht', self.id, k)))
        self.tree = HullTree(leaves, leaf_agg=lambda it: it.wp)

    def __len__(self):
        return len(self.tree)

    @property
    def indices(self):
        return [it.index for it in self.tree.items()]

    def wpupdate(self):
        return [it.wp - self.base for it in self.tree.items()]

    def root_wpupdate(self):
        return None if self.tree.root is None else self.tree.root.agg - self.base

    def valid(self, k, d):
        it = self._leaf(k)
        return d - self.shortestdist + (it.wp - self.base) > 0.0

    def valid_leaves(self, d):
        return [it.index for it in self.tree.items() if d - self.shortestdist + (it.wp - self.base) > 0.0]

    def leaf_weight(self, k):
        """Global radius at which w(v_k) appears."""
        return self.shortestdist - (self._leaf(k).wp - self.base)

    def _leaf(self, k):
        for it in self.tree.items():
            if it.index == k:
                return it
        raise HullTreeError("no leaf %d" % k)

    def position(self, k):
        idx = self.indices
        if k not in idx:
            raise HullTreeError("k out of range")
        return idx.index(k)

    def split(self, k):
        """(left, right) at chain index k; right starts at v_k."""
        idx = self.indices
        if k < idx[0] or k > idx[-1]:
            raise HullTreeError("k out of range")
        pos = idx.index(k)
        right_tree = self.tree.split(pos)
        right = BHT.__new__(BHT)
        right._ids = self._ids
        right.id = next(self._ids)
        right.chain, right.z, right.end = self.chain, k, self.end
        right.tree = right_tree
        shift = right_tree.item_at(0).wp - self.base
        right.base = self.base + shift
        right.shortestdist = self.shortestdist - shift
        right.tangentstart = k
        right.split_flag = True
        self.end = k - 1
        return self, right

    def envelope(self, d, allow_dirty=False):
        return self.tree.envelope(d, allow_dirty)

    # hull-item interface so a bunch can sit at a WST leaf
    def next_activation(self, r):
        best = inf
        for it, off in self.tree.items_with_offsets():
            w = it.arc.weight + off
            if w > r:
                best = min(best, w)
        return best

    def arcs(self, d=None):
        out = []
        for it, off in self.tree.items_with_offsets():
            a = it.arc
            out.append(Arc(a.center, a.weight + off, a.lo, a.span, a.tag))
        return out

    def icurves(self):
        """Intra-bunch I-curves: rays extending consecutive chain edges."""
        idx = self.indices
        out = []
        for a, b in zip(idx, idx[1:]):
            p, q = self.chain[a], self.chain[b]
            out.append((q, (q[0] - p[0], q[1] - p[1])))
        return out

    def __repr__(self):
        return "BHT(id=%d, z=%d, leaves=%d, sd=%.6g)" % (self.id, self.z, len(self), self.shortestdist)


def _default_cone(verts, k, z, tangentstart):
    """Directions a wavefront segment at chain vertex k can sweep."""
    n = len(verts)
    if k > z:
        a = ang(verts[k][0] - verts[k - 1][0], verts[k][1] - verts[k - 1][1])
    elif tangentstart is not None and not isinstance(tangentstart, int):
        a = ang(verts[k][0] - tangentstart[0], verts[k][1] - tangentstart[1])
    elif k + 1 < n:
        a = ang(verts[k + 1][0] - verts[k][0], verts[k + 1][1] - verts[k][1])
    else:
        return 0.0, TAU
    if k + 1 < n:
        b = ang(verts[k + 1][0] - verts[k][0], verts[k + 1][1] - verts[k][1])
        lo, hi = (a, b)
        span = (hi - lo) % TAU
        if span > TAU / 2:
            lo, span = b, (a - b) % TAU
        return lo, span
    return a - 0.25 * TAU, 0.5 * TAU


class StrikeAction:
    BUILD, DOWNSTREAM, VALID, SPLIT = 1, 2, 3, 4


def bht_tangent_strike(bunches, chain, z, d, striker=None, ids=None):
    """Initialization cases for a tangent strike at chain index z, radius d.

    ``bunches`` is the list of live BHTs on this chain (mutated in place).
    ``ids`` is an optional id counter for new bunches.
    Returns (case, new_bunch_or_None, removed_bunches).
    """
    for b in bunches:
        idx = b.indices
        if z in idx:
            if b.valid(z, d):
                return StrikeAction.VALID, None, []
            # invalid leaf: the striker reaches v_z before the chain wave
            pos = idx.index(z)
            old = list(idx)
            _, right = b.split(z) if pos > 0 else (None, b)
            shift = d - right.leaf_weight(z)
            right.tree.add_offset(shift)
            right.shortestdist = d
            right.tangentstart = striker
            right.split_flag = True
            bunches.remove(b)
            bunches.append(right)
            removed = [b] if pos > 0 else []
            assert len(old) == pos + len(right)
            return StrikeAction.SPLIT, right, removed
    for b in bunches:
        if b.indices and b.indices[0] > z and any(b.valid(k, d) for k in b.indices):
            return StrikeAction.DOWNSTREAM, None, []
    nb = BHT(chain, z, d, tangentstart=striker, ids=ids)
    bunches.append(nb)
    return StrikeAction.BUILD, nb, []


# ----------------------------------------------------------- WST and BST

class OrderedHullTree(HullTree):
    """HullTree whose items carry an ``order`` key that must stay sorted."""

    def __init__(self, items=(), key=None):
        self.key = key or (lambda it: it.order)
        items = list(items)
        ks = [self.key(it) for it in items]
        if ks != sorted(ks):
            raise HullTreeError("order violation")
        super().__init__(items)

    def insert_ordered(self, item):
        k = self.key(item)
        keys = [self.key(it) for it in self.items()]
        import bisect
        i = bisect.bisect_left(keys, k)
        if i < len(keys) and keys[i] == k:
            raise HullTreeError("order violation")
        self.insert(i, item)
        return i

    def insert(self, i, item):
        n = len(self)
        k = self.key(item)
        if i > 0 and not self.key(self.item_at(i - 1)) < k:
            raise HullTreeError("order violation")
        if i < n and not k < self.key(self.item_at(i)):
            raise HullTreeError("order violation")
        super().insert(i, item)

    def split(self, k):
        other = super().split(k)
        other.__class__ = self.__class__
        other.key = self.key
        return other

    def concat(self, other):
        if len(self) and len(other):
            if not self.key(self.item_at(len(self) - 1)) < self.key(other.item_at(0)):
                raise HullTreeError("order violation")
        return super().concat(other)


class WST(OrderedHullTree):
    """Waveform-section tree: leaves are bunches in wavefront order."""


class BST(OrderedHullTree):
    """Boundary-section tree: leaves are chains/doors in boundary order."""


# ----------------------------------------------------------------- queries

class _Cursor:
    """Position inside a (possibly nested) hull tree: node + weight shift."""
    __slots__ = ('tree', 'node', 'off', 'path')

    def __init__(self, tree, node, off, path):
        self.tree, self.node, self.off, self.path = tree, node, off, path

    def env(self, d):
        n = self.node
        return self.tree._env(n, d - self.off - n.offset, True)[0]

    def atomic(self):
        return self.node.leaf and not isinstance(self.node.item, (BHT, HullTree))

    def children(self):
        n = self.node
        off = self.off + n.offset
        if n.leaf:
            inner = n.item.tree if isinstance(n.item, BHT) else n.item
            if inner.root is None:
                return []
            return [_Cursor(inner, inner.root, off, self.path + (0,))]
        return [_Cursor(self.tree, n.left, off, self.path + (0,)),
                _Cursor(self.tree, n.right, off, self.path + (1,))]

    def size(self):
        n = self.node
        if n.leaf and isinstance(n.item, BHT):
            return len(n.item) + 1
        return n.size


def _root_cursor(x):
    if isinstance(x, BHT):
        x = x.tree
    if isinstance(x, HullTree):
        if x.root is None:
            return None
        return _Cursor(x, x.root, 0.0, ())
    # a bare element/arc: wrap it
    t = HullTree([x])
    return _Cursor(t, t.root, 0.0, ())


def _leaf_strike(arc_item, shift, elem, d):
    """Extra radius until this arc strikes the element (exact)."""
    a = arc_item.arc
    w = a.weight + shift
    if d - w < 0.0:
        return inf, None
    best = (inf, None)
    for P, Q in elem.segments():
        dd, pt = cone_segment_distance(a.center, a.lo, a.span, P, Q)
        if dd < best[0]:
            best = (dd, pt)
    if best[1] is None:
        return inf, None
    return w + best[0] - d, best[1]


def min_strike(sites, boundary, d, stats=None):
    """Minimum extra radius until a valid wavefront segment in ``sites``
    (BHT, WST or ArcLeaf) strikes an element of ``boundary`` (BST,
    PointsLeaf or list of PointsLeaf).

    Best-first branch and bound over node pairs; the lower bound is the
    signed separation of the two hulls.  Returns (delta, witness) with
    witness = (arc leaf, element, point), or (inf, None).
    """
    if isinstance(boundary, list):
        boundary = HullTree(boundary)
    ca, cb = _root_cursor(sites), _root_cursor(boundary)
    if ca is None or cb is None:
        return inf, None
    counter = itertools.count()
    heap = [(-inf, next(counter), ca, cb)]
    best = (inf, (), None)
    pops = 0
    while heap:
        lb, _, x, y = heapq.heappop(heap)
        pops += 1
        if lb > best[0]:
            break
        if x.atomic() and y.atomic():
            val, pt = _leaf_strike(x.node.item, x.off + x.node.offset, y.node.item, d)
            key = (val, x.path + y.path)
            if pt is not None and (val < best[0] - EPS or (abs(val - best[0]) <= EPS and key[1] < best[1])):
                best = (val, key[1], (x.node.item, y.node.item, pt))
            continue
        if y.atomic() or (not x.atomic() and x.size() >= y.size()):
            parts = [(c, y) for c in x.children()]
        else:
            parts = [(x, c) for c in y.children()]
        for p, q in parts:
            ea, eb = p.env(d), q.env(d)
            if not ea or not eb:
                continue
            s = hull_separation(ea, eb)
            heapq.heappush(heap, (s, next(counter), p, q))
    if stats is not None:
        stats['pops'] = stats.get('pops', 0) + pops
    if best[2] is None:
        return inf, None
    return max(0.0, best[0]), best[2]


def brute_min_strike(arcs, elements, d):
    """Reference: scan every (valid arc, element segment) pair."""
    best = (inf, None)
    for a in arcs:
        if d - a.weight < 0.0:
            continue
        for el in elements:
            for P, Q in el.segments():
                dd, pt = cone_segment_distance(a.center, a.lo, a.span, P, Q)
                if pt is not None and a.weight + dd - d < best[0]:
                    best = (a.weight + dd - d, pt)
    return (max(0.0, best[0]), best[1]) if best[1] is not None else best


def bst_min_dist(bst, bunch, d):
    return min_strike(bunch, bst, d)


def wst_min_dist(wst, elem, d):
    return min_strike(wst, elem, d)


# ------------------------------------------------------------- iintersect

def _range_excludes_zero(bis, env):
    """True when f = (wa+|p-a|) - (wb+|p-b|) keeps one sign on the hull."""
    (a, wa), (b, wb) = bis.left, bis.right
    pts = [support_point(pc, t) for x, y, pc in env for t in (x, y)]
    if not pts:
        return True
    ma = [dist(p, a) for p in pts]
    mb = [dist(p, b) for p in pts]
    lo_a = max(0.0, -_sd(env, a))
    lo_b = max(0.0, -_sd(env, b))
    fmax = wa + max(ma) - (wb + lo_b)
    fmin = wa + lo_a - (wb + max(mb))
    return fmin > EPS or fmax < -EPS


def _sd(env, p):
    from .geom import signed_dist_point
    return -signed_dist_point(env, p)


def iintersect(bis, sb, half=0):
    """First intersection of a bisector with a boundary sequence.

    ``sb`` is a BST, a list of PointsLeaf, or a list of point sequences.
    Nodes whose hull keeps the bisector function of one sign are pruned;
    surviving leaves are intersected exactly.  "First" means smallest
    |tau| along the bisector (restricted to one half if half != 0), ties
    broken by boundary order.  Returns (element, point) or None.
    """
    if isinstance(sb, list):
        sb = HullTree([e if isinstance(e, PointsLeaf) else PointsLeaf(e, tag=i) for i, e in enumerate(sb)])
    if sb.root is None:
        return None
    best = None
    stack = [(sb.root, 0)]
    order = itertools.count()
    while stack:
        n, _ = stack.pop()
        env = sb._env(n, 0.0, True)[0]
        if _range_excludes_zero(bis, env):
            continue
        if not n.leaf:
            stack.append((n.right, next(order)))
            stack.append((n.left, next(order)))
            continue
        for P, Q in n.item.segments():
            if P == Q:
                continue
            p = intersect_bisector_segment(bis, (P, Q), half)
            if p is None:
                continue
            key = abs(bis.tau_of(p))
            if best is None or key < best[0] - EPS:
                best = (key, n.item, p)
    return None if best is None else (best[1], best[2])


def brute_iintersect(bis, elements, half=0):
    best = None
    for el in elements:
        for P, Q in el.segments():
            if P == Q:
                continue
            p = intersect_bisector_segment(bis, (P, Q), half)
            if p is None:
                continue
            key = abs(bis.tau_of(p))
            if best is None or key < best[0] - EPS:
                best = (key, el, p)
    return None if best is None else (best[1], best[2])


def touch_bound(n_leaves):
    return 2 * ceil(log2(max(n_leaves, 2)))

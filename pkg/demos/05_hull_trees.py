"""Hull trees: weighted site trees, boundary trees and bunch trees."""
import math
import random

from spwave.hulltrees import BHT, BST, WST, PointsLeaf, StrikeAction, bht_tangent_strike, min_strike

rng = random.Random(1)


def bunch(order, n=4):
    cx = order * 3.0
    chain = [(cx + math.cos(i / 3), math.sin(i / 3)) for i in range(n)]
    b = BHT(chain, 0, rng.uniform(0, 1))
    b.order = order
    return b


# A WST keeps bunches ordered and maintains the upper envelope of their arcs.
w = WST([bunch(i) for i in range(6)])
env = w.envelope(5.0)
print("WST with %d bunches, envelope has %d pieces" % (len(w), len(env)))
right = w.split(3)
print("after split: %d + %d bunches" % (len(w), len(right)))
w.concat(right)
print("touches per op:", {k: v[-1] for k, v in w.op_touches.items() if v})

# A BST stores boundary chains; min_strike asks how much further the
# wavefront must grow before a valid segment reaches one of them.
TAU = 2 * math.pi
b = BHT([(0, 0), (10, 0)], 0, 0.0, cones=[(0.0, TAU), (0.0, TAU)])
doors = BST([PointsLeaf([(9, 3), (11, 3)], tag="door", key=0)], key=lambda e: e.key)
delta, (_, elem, pt) = min_strike(b, doors, 1.0)
# the far chain vertex is not yet valid, so the strike comes from the origin
print("strike after %.4f more, at %s (sqrt(90) - 1 = %.4f)" % (delta, pt, math.sqrt(90) - 1))

# Bunch trees split lazily on tangent strikes while every leaf keeps its validity.
chain = [(math.cos(a), math.sin(a)) for a in (0.0, 0.4, 0.8, 1.2, 1.6)]
bunches = []
print(bht_tangent_strike(bunches, chain, 0, 0.0)[0] == StrikeAction.BUILD)
# a second strike reaches v_3 before the chain wave does: the bunch is cut
# there and the prefix v_0..v_2 is handed back as removed
action, new, removed = bht_tangent_strike(bunches, chain, 3, 0.5)
print("split:", action == StrikeAction.SPLIT, "removed prefix leaves:", [list(b.indices) for b in removed])
for b in bunches:
    print("bunch", b.id, "leaves", list(b.indices), "valid at d=2:", [b.valid(k, 2.0) for k in b.indices])

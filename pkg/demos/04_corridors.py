"""Junctions, corridors, funnels and the usefulness marking."""
from spwave.corridors import build_decomposition
from spwave.domain import fixture
from spwave.triangulate import triangulate

for name in ("square-hole", "u-duct", "comb"):
    tri = triangulate(fixture(name))
    d = build_decomposition(tri)
    kinds = [c.kind for c in d.corridors]
    print("%-12s junctions=%d corridors=%d open=%d closed=%d dead-ends=%d"
          % (name, len(d.junctions), len(d.corridors), kinds.count("open"), kinds.count("closed"),
             sum(c.dead_end for c in d.corridors)))

# In a closed corridor the two funnel apices are joined by a taut chain.
tri = triangulate(fixture("u-duct"))
d = build_decomposition(tri)
for c in d.corridors:
    if c.kind == "closed" and c.apex_distance > 0:
        print("closed corridor %d: apices %s and %s, apex distance %.4f"
              % (c.id, tri.vertices[c.funnels[0].apex], tri.vertices[c.funnels[1].apex], c.apex_distance))

# The comb has teeth that no simple s-t route enters.
d = build_decomposition(triangulate(fixture("comb")))
useless = [c.id for c in d.corridors if not d.is_useful(("C", c.id))]
print("useless comb corridors:", useless)

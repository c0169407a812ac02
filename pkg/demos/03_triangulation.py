"""Constrained Delaunay triangulation of a domain with holes."""
from spwave.domain import fixture, random_instance
from spwave.triangulate import check_triangulation, triangulate

inst = fixture("two-holes")
tri = triangulate(inst)
print("vertices", len(tri.vertices), "triangles", len(tri), "edges", tri.edge_count())
print("reflex vertices:", sum(tri.reflex))

# Euler's formula with h holes: V - E + T = 1 - h, which fixes the count at
# T = 2V - B - 2 + 2h where B is the number of boundary vertices.
V, B = len(tri.vertices), sum(tri.poly_sizes)
print("V - E + T =", V - tri.edge_count() + len(tri), "with", inst.m, "holes")
print("expected triangles:", 2 * V - B - 2 + 2 * inst.m)

check_triangulation(tri, inst)
print("constrained and Delaunay checks passed")

for m in (1, 5, 20):
    t = triangulate(random_instance(0, m))
    print("m=%2d -> %d triangles" % (m, len(t)))

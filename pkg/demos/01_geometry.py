"""Geometric primitives, from orientation predicates up to weighted bisectors."""
import math

from spwave.geom import (
    common_tangent, convex_hull, dist, intersect_bisector_segment, make_bisector, orient, tangent_from_point,
)

# Orientation is filtered floating point with an exact fallback,
# so nearly collinear triples still get a definite sign.
print("orient ccw:", orient((0, 0), (1, 0), (0, 1)))
print("orient near-collinear:", orient((0, 0), (1e-17, 1), (2e-17, 2)))

pts = [(math.cos(a), math.sin(a)) for a in (0.1, 0.9, 1.7, 2.5, 3.3, 4.1, 4.9, 5.7)] + [(0.2, 0.1)]
print("hull of 9 points has", len(convex_hull(pts)), "vertices")

arc = [(math.cos(a), math.sin(a)) for a in (0.0, 0.5, 1.0, 1.5)]
print("left tangent from (3, 3):", tangent_from_point((3, 3), arc, "left"))

# Bridge between two chains that already carry additive offsets.
other = [(x + 4, y) for x, y in arc]
print("bridge:", common_tangent(arc, other, 0.0, 0.5))

# Two sites with weights 0 and 1 give a hyperbola branch. Where does it hit
# a vertical wall at x = 2?
bis = make_bisector(((0.0, 0.0), 0.0), ((3.0, 0.0), 1.0))
hit = intersect_bisector_segment(bis, ((2.0, -5.0), (2.0, 5.0)))
print("bisector meets wall at:", hit)
print("weighted distances:", dist(hit, (0, 0)), "vs", dist(hit, (3, 0)) + 1.0)

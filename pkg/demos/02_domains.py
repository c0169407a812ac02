"""Instances: built-in fixtures, random generation and JSON round trips."""
from spwave.domain import FIXTURES, InstanceError, fixture, make_instance, parse_instance, random_instance, serialize

for name in FIXTURES:
    inst = fixture(name)
    print("%-15s holes=%d vertices=%d" % (name, inst.m, inst.n))

# Random instances are reproducible from (seed, m, k).
a, b = random_instance(3, 5, 8), random_instance(3, 5, 8)
print("same seed gives same instance:", serialize(a) == serialize(b))

text = serialize(a)
print("round trip:", serialize(parse_instance(text)) == text)

# Validation rejects bad inputs, for example s placed inside a hole.
try:
    make_instance([(0, 0), (4, 0), (4, 4), (0, 4)], [[(1, 1), (3, 1), (3, 3), (1, 3)]], (2, 2), (0.5, 0.5))
except InstanceError as e:
    print("rejected:", e)

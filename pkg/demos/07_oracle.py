"""Visibility-graph oracle and cross-checking the engine against it."""
from spwave.domain import random_instance
from spwave.engine import run
from spwave.oracle import oracle_distance, path_is_valid, visibility_graph

inst = random_instance(2, 6)
g = visibility_graph(inst)
d, path = oracle_distance(inst, g)
print("oracle distance %.9f via %d vertices" % (d, len(path)))
print("oracle path valid:", path_is_valid(inst, path))

worst = 0.0
for seed in range(20):
    inst = random_instance(seed, 1 + seed % 8)
    e, (o, _) = run(inst), oracle_distance(inst)
    worst = max(worst, abs(e.distance - o) / o)
print("engine vs oracle over 20 instances, max relative error %.2e" % worst)

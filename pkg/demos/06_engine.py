"""The wavefront engine: distances, paths, event counters and traces."""
import math

from spwave.domain import fixture, random_instance
from spwave.engine import run

r = run(fixture("free"))
print("free square:", r.distance, r.path)

r = run(fixture("square-hole"))
print("square hole: %.12f (closed form %.12f)" % (r.distance, 1 + 2 * math.sqrt(2.5)))

# Both rewind modes give the same distances.
inst = random_instance(7, 10)
a, b = run(inst, rewind_mode="offset"), run(inst, rewind_mode="replay")
print("offset %.9f replay %.9f" % (a.distance, b.distance))

print("event counters:")
for k, v in sorted(a.counters.items()):
    if k.startswith("events_") or k == "bunch_peak":
        print("  %-12s %s" % (k, v))

trace = []
run(fixture("comb"), trace=trace)
print("trace lines:", len(trace), "first:", trace[0])

"""Driving the command line tool and writing SVG renders."""
import json
import os
import subprocess
import sys
import tempfile

from spwave.domain import fixture, serialize
from spwave.engine import run
from spwave.render import render

tmp = tempfile.mkdtemp()
src = os.path.join(tmp, "two-holes.json")
with open(src, "w") as f:
    f.write(serialize(fixture("two-holes")))


def spw(*args):
    r = subprocess.run([sys.executable, "-m", "spwave.cli", *args], capture_output=True, text=True)
    print("$ spw", " ".join(args), "-> exit", r.returncode)
    return r.stdout


print(json.loads(spw("solve", "--in", src))["distance"])
print(json.loads(spw("compare", "--random", "0,4,8", "--count", "3"))["max_rel_error"])
print(spw("bench", "--m-list", "2,4", "--seeds", "2")[:200], "...")

inst = fixture("two-holes")
trace = []
res = run(inst, trace=trace)
for what in ("domain", "decomposition"):
    out = os.path.join(tmp, what + ".svg")
    with open(out, "w") as f:
        f.write(render(inst, what))
    print("wrote", out)
with open(os.path.join(tmp, "path.svg"), "w") as f:
    f.write(render(inst, "path", path=res.path))
svg = render(inst, "wavefront:%.3f" % (res.distance / 2), trace_lines=trace)
print("wavefront at half the distance has", svg.count('class="arc"'), "arcs")

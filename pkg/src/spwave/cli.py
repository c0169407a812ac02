"""spw: solve, oracle, compare, decompose, bench, trace, render.

Exit codes: 0 success, 1 invalid input or failed check, 2 no s-t path.
Set SPW_LOG (DEBUG, INFO, ...) to change the log level.
"""
import argparse
import json
import logging
import os
import statistics
import sys
import time

from .corridors import build_decomposition, DecompositionError
from .domain import InstanceError, fixture, parse_instance, random_instance
from .engine import Engine, EngineError
from .oracle import OracleError, oracle_distance, path_is_valid
from .render import RenderError, render
from .triangulate import triangulate

log = logging.getLogger("spwave")

EVENT_KEYS = ("events_I", "events_II", "events_III", "events_IV")
BENCH_KEYS = EVENT_KEYS + ("bunch_peak", "bunches_created", "splits", "merges", "gateways", "bridge_resplits",
                         "assoc_linear_scans")


class Disconnected(Exception):
    pass


def _read_instance(path):
    try:
        with open(path, "rb") as fh:
            return parse_instance(fh.read())
    except OSError as e:
        raise InstanceError("cannot read %s: %s" % (path, e.strerror))


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _solve(inst, mode="offset", trace=None):
    try:
        eng = Engine(inst, rewind_mode=mode, trace=trace)
        return eng, eng.run()
    except EngineError as e:
        raise Disconnected(str(e))


# ---------------------------------------------------------------- commands
def cmd_solve(a):
    inst = _read_instance(a.inp)
    trace = [] if a.trace else None
    _, res = _solve(inst, a.rewind_mode, trace)
    if a.trace:
        _write(a.trace, "".join(ln + "\n" for ln in trace))
    _write(a.out, res.to_json() + "\n")
    return 0


def cmd_oracle(a):
    inst = _read_instance(a.inp)
    try:
        d, path = oracle_distance(inst)
    except OracleError as e:
        raise Disconnected(str(e))
    _write(a.out, json.dumps({"distance": d, "path": [list(p) for p in path], "counters": {}},
                             sort_keys=True) + "\n")
    return 0


def _instances(a):
    if a.inp:
        yield "file", _read_instance(a.inp)
        return
    try:
        seed, m, k = (int(x) for x in a.random.split(","))
    except ValueError:
        raise InstanceError("--random expects seed,m,k")
    for i in range(a.count):
        yield "seed=%d,m=%d,k=%d" % (seed + i, m, k), random_instance(seed + i, m, k)


def cmd_compare(a):
    rows, worst, invalid = [], 0.0, 0
    sums = {k: 0 for k in EVENT_KEYS}
    for label, inst in _instances(a):
        _, res = _solve(inst, a.rewind_mode)
        d = res.distance
        if a.inject_fault:
            d *= 1.0 + 1e-3
        o, _ = oracle_distance(inst)
        err = abs(d - o) / max(abs(o), 1e-300)
        ok = path_is_valid(inst, res.path)
        worst = max(worst, err)
        invalid += not ok
        for k in EVENT_KEYS:
            sums[k] += res.counters[k]
        rows.append({"instance": label, "engine": d, "oracle": o, "rel_error": err, "path_valid": ok})
    report = {"instances": len(rows), "max_rel_error": worst, "path_failures": invalid,
              "event_totals": sums, "rows": rows, "tolerance": 1e-6}
    _write(a.out, _dumps(report))
    return 0 if worst <= 1e-6 and invalid == 0 else 1


def cmd_decompose(a):
    inst = _read_instance(a.inp)
    tri = triangulate(inst)
    if a.dump_tri:
        f = inst.scale
        lines = ["OFF", "%d %d 0" % (len(tri.vertices), len(tri.triangles))]
        lines += ["%r %r 0" % (x * f, y * f) for x, y in tri.vertices]
        lines += ["3 %d %d %d" % tuple(t) for t in tri.triangles]
        _write(a.out, "\n".join(lines) + "\n")
        return 0
    try:
        d = build_decomposition(tri)
    except DecompositionError as e:
        if "no path" in str(e):
            raise Disconnected(str(e))
        raise
    _write(a.out, _dumps(d.to_dict()))
    return 0


def cmd_bench(a):
    ms = [int(x) for x in a.m_list.split(",")]
    rows = []
    for m in ms:
        acc = {k: [] for k in BENCH_KEYS}
        t0 = time.perf_counter()
        for seed in range(a.seeds):
            if m == 0:
                inst = fixture("free")
            else:
                inst = random_instance(seed, m, a.k)
            _, res = _solve(inst)
            for k in BENCH_KEYS:
                acc[k].append(res.counters.get(k, 0))
        row = {"m": m, "mean": {k: statistics.fmean(v) for k, v in acc.items()}}
        if a.timing:
            row["seconds"] = time.perf_counter() - t0
        rows.append(row)
    flagged = []
    for prev, cur in zip(rows, rows[1:]):
        ratio = {}
        for k in BENCH_KEYS:
            base = prev["mean"][k]
            ratio[k] = cur["mean"][k] / base if base > 0 else None
            if k in EVENT_KEYS and ratio[k] is not None and cur["m"] == 2 * prev["m"] and ratio[k] > 2.5:
                flagged.append("%s m=%d->%d ratio %.3f" % (k, prev["m"], cur["m"], ratio[k]))
        cur["ratio"] = ratio
    peak_c = max((r["mean"]["bunch_peak"] / r["m"] for r in rows if r["m"] > 0), default=0.0)
    report = {"k": a.k, "seeds": a.seeds, "rows": rows, "flagged": flagged, "bunch_peak_c": peak_c}
    _write(a.out, _dumps(report))
    return 1 if flagged else 0


def cmd_trace(a):
    inst = _read_instance(a.inp)
    trace = []
    eng, res = _solve(inst, a.rewind_mode, trace)
    out = "".join(ln + "\n" for ln in trace)
    if a.dump_trees:
        d = res.distance / inst.scale
        for key in sorted(eng.book.live):
            for b in eng.book.live[key]:
                rec = {"type": "tree", "bunch": b.id, "chain": list(key), "indices": b.indices,
                       "tree": b.tree.dump(d)}
                out += json.dumps(rec, sort_keys=True) + "\n"
    _write(a.out, out)
    return 0


def cmd_render(a):
    inst = _read_instance(a.inp)
    path = trace = None
    if a.what == "path":
        _, res = _solve(inst)
        path = res.path
    elif a.what.startswith("wavefront:"):
        if a.trace:
            with open(a.trace) as fh:
                trace = fh.read().splitlines()
        else:
            trace = []
            _solve(inst, trace=trace)
    _write(a.out, render(inst, a.what, path=path, trace_lines=trace))
    return 0


# ---------------------------------------------------------------- parser
def build_parser():
    p = argparse.ArgumentParser(prog="spw", description="Euclidean shortest paths among polygonal obstacles.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, out=True):
        sp.add_argument("--in", dest="inp", required=True, help="instance JSON")
        if out:
            sp.add_argument("--out", default="-", help="output file (default stdout)")

    sp = sub.add_parser("solve", help="run the wavefront engine")
    common(sp)
    sp.add_argument("--trace", help="write the JSON-lines event trace here")
    sp.add_argument("--rewind-mode", choices=("offset", "replay"), default="offset")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("oracle", help="visibility-graph shortest path")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("compare", help="engine vs oracle")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--in", dest="inp")
    g.add_argument("--random", help="seed,m,k")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--out", default="-")
    sp.add_argument("--rewind-mode", choices=("offset", "replay"), default="offset")
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("decompose", help="junctions and corridors as JSON")
    common(sp)
    sp.add_argument("--dump-tri", action="store_true", help="OFF-style triangulation listing")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("bench", help="event-count scaling report")
    sp.add_argument("--m-list", default="5,10,20,40")
    sp.add_argument("--k", type=int, default=8)
    sp.add_argument("--seeds", type=int, default=20)
    sp.add_argument("--timing", action="store_true", help="include wall-clock seconds (not deterministic)")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("trace", help="JSON-lines event trace")
    common(sp)
    sp.add_argument("--rewind-mode", choices=("offset", "replay"), default="offset")
    sp.add_argument("--dump-trees", action="store_true", help="append hull-tree dumps of live bunches")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("render", help="SVG render")
    common(sp)
    sp.add_argument("--what", required=True, help="domain | decomposition | path | wavefront:<d>")
    sp.add_argument("--trace", help="trace to rebuild the wavefront from (default: solve now)")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None):
    level = os.environ.get("SPW_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Disconnected as e:
        print("spw: %s" % (e or "disconnected"), file=sys.stderr)
        return 2
    except (InstanceError, RenderError, DecompositionError, ValueError) as e:
        print("spw: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

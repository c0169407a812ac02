"""Acceptance criteria 1-9, one test each, one PASS/FAIL line each."""
import math
import random
import statistics
import subprocess
import sys
import time

import numpy as np

from conftest import report
from scenarios import bht_replay, hull_fuzz, iintersect_case
from spwave.domain import FIXTURES, fixture, random_instance
from spwave.engine import run
from spwave.hulltrees import BHT, WST
from spwave.oracle import oracle_distance, path_is_valid
from spwave.triangulate import triangulate
from spwave.corridors import build_decomposition
from test_corridors import check_invariants

EVENTS = ("events_I", "events_II", "events_III", "events_IV")


def test_1_oracle_equivalence():
    t0 = time.perf_counter()
    worst, bad_paths, over = 0.0, 0, []
    for seed in range(500):
        inst = random_instance(seed, 1 + seed % 20, 8)
        r = run(inst)
        d, _ = oracle_distance(inst)
        err = abs(r.distance - d) / d
        worst = max(worst, err)
        if err > 1e-6:
            over.append(seed)
        if not path_is_valid(inst, r.path):
            bad_paths += 1
    secs = time.perf_counter() - t0
    ok = not over and bad_paths == 0
    report(1, ok, "500 instances, max rel error %.3g, invalid paths %d, %.1f s (engine + oracle)"
           % (worst, bad_paths, secs))
    assert ok, over


def test_2_analytic_fixtures():
    free = abs(run(fixture("free")).distance - 4.0)
    sq = abs(run(fixture("square-hole")).distance - (1 + 2 * math.sqrt(2.5)))
    ok = free < 1e-12 and sq <= 1e-9
    report(2, ok, "free-space error %.3g, square-hole error %.3g" % (free, sq))
    assert ok


def test_3_event_scaling():
    ms = (5, 10, 20, 40)
    means = {}
    for m in ms:
        acc = {k: [] for k in EVENTS + ("bunch_peak",)}
        for seed in range(20):
            c = run(random_instance(seed, m, 8)).counters
            for k in acc:
                acc[k].append(c[k])
        means[m] = {k: statistics.fmean(v) for k, v in acc.items()}
    ratios = {k: [means[b][k] / means[a][k] for a, b in zip(ms, ms[1:])] for k in EVENTS}
    worst = max(max(v) for v in ratios.values())
    # bunch peak <= c*m: least-squares slope through the origin
    c_fit = sum(means[m]["bunch_peak"] * m for m in ms) / sum(m * m for m in ms)
    c_max = max(means[m]["bunch_peak"] / m for m in ms)
    ok = worst <= 2.5
    detail = "max doubling ratio %.3f; " % worst + ", ".join(
        "%s %s" % (k[7:], "/".join("%.2f" % x for x in v)) for k, v in ratios.items())
    report(3, ok, detail + "; bunch peak c fit %.2f (max peak/m %.2f)" % (c_fit, c_max))
    assert ok


def test_4_hull_tree_fuzz():
    violations, first = 0, None
    for seed in range(10_000):
        errs = hull_fuzz(random.Random(seed), n_ops=4)
        if errs:
            violations += 1
            first = first or (seed, errs[0])
    ok = violations == 0
    report(4, ok, "10000 WST/BST op sequences, %d violations" % violations)
    assert ok, first


def test_5_bht_validity_replay():
    bad = [s for s in range(1000) if bht_replay(random.Random(s))]
    ok = not bad
    report(5, ok, "1000 bunch scenarios, %d mismatches" % len(bad))
    assert ok, bad[:5]


def test_6_iintersect():
    bad = [s for s in range(1000) if iintersect_case(random.Random(10_000 + s))]
    ok = not bad
    report(6, ok, "1000 bisector/boundary pairs, %d mismatches" % len(bad))
    assert ok, bad[:5]


def test_7_decomposition_invariants():
    cases = [fixture(n) for n in FIXTURES] + [random_instance(s, 1 + s % 20) for s in range(100)]
    failed = []
    for i, inst in enumerate(cases):
        tri = triangulate(inst)
        try:
            check_invariants(inst, tri, build_decomposition(tri))
        except AssertionError:
            failed.append(i)
    ok = not failed
    report(7, ok, "%d fixtures + 100 random instances, %d failures" % (len(FIXTURES), len(failed)))
    assert ok, failed


def _cli(*args):
    r = subprocess.run([sys.executable, "-m", "spwave.cli", *args], capture_output=True, timeout=600)
    return r.returncode, r.stdout


def test_8_determinism(tmp_path):
    src = tmp_path / "inst.json"
    from spwave.domain import serialize
    src.write_text(serialize(random_instance(11, 6)))
    cmds = [("solve", "--in", str(src)),
            ("compare", "--random", "0,5,8", "--count", "5"),
            ("bench", "--m-list", "5,10", "--seeds", "3")]
    same = []
    for cmd in cmds:
        a, b = _cli(*cmd), _cli(*cmd)
        same.append(a == b and a[1] != b"")
    ok = all(same)
    report(8, ok, "solve/compare/bench byte-identical across runs: %s" % same)
    assert ok


def _tree_op_costs(m, k=8, rng=None):
    """Mean touched nodes per WST insert/delete/split/merge and BHT split,
    plus the number of bridge re-splits seen in the WST."""
    rng = rng or random.Random(m)

    def bunch(order):
        chain = [(math.cos(i / k) + order, math.sin(i / k)) for i in range(k)]
        b = BHT(chain, 0, 0.0)
        b.order = order
        return b

    w = WST([bunch(i) for i in range(m)])
    for _ in range(64):
        w.insert_ordered(bunch(rng.uniform(0, m)))
        w.delete(rng.randrange(len(w)))
        other = w.split(rng.randrange(len(w) + 1))
        w.concat(other)
    costs = [statistics.fmean(w.op_touches[op]) for op in ("insert", "delete", "split", "merge")]
    big = BHT([(math.cos(i / (m * k)), math.sin(i / (m * k))) for i in range(m * k)], 0, 0.0)
    for _ in range(32):
        c = BHT(big.chain, 0, 0.0)
        c.tree.split(rng.randrange(m * k))
        costs.append(c.tree.op_touches["split"][-1])
    return sum(costs), w.resplits


def test_9_tree_op_complexity():
    k = 8
    ms = [8, 16, 32, 64, 128, 256, 512]
    runs = [_tree_op_costs(m, k) for m in ms]
    y = np.array([c for c, _ in runs])
    resplits = sum(r for _, r in runs)
    x = np.array([math.log2(m) * math.log2(m * k) for m in ms])
    # fit on the four smallest sizes, then require larger sizes to stay under the line
    a, b = np.polyfit(x[:4], y[:4], 1)
    pred = a * x + b
    ok = bool(np.all(y[4:] <= 1.10 * pred[4:]))
    A, B = np.polyfit(x, y, 1)
    report(9, ok, "touches ~ %.3f*log m*log n + %.2f over m=%s (k=%d); largest/extrapolated %.2f; "
           "bridge re-splits observed %d" % (A, B, ms, k, float(y[-1] / pred[-1]), resplits))
    assert ok, list(zip(ms, y.tolist(), pred.tolist()))

import json
import math
import subprocess
import sys

import pytest

from spwave import cli
from spwave.domain import fixture, serialize
from spwave.engine import EngineError


@pytest.fixture
def files(tmp_path):
    def write(name, inst_or_text):
        p = tmp_path / name
        data = inst_or_text if isinstance(inst_or_text, (str, bytes)) else serialize(inst_or_text)
        p.write_bytes(data.encode() if isinstance(data, str) else data)
        return str(p)
    return write


def run_cli(*argv):
    return cli.main(list(argv))


def test_solve_free(files, tmp_path):
    out = tmp_path / "r.json"
    assert run_cli("solve", "--in", files("f.json", fixture("free")), "--out", str(out)) == 0
    assert json.loads(out.read_text())["distance"] == 4.0


def test_solve_square_hole_with_trace(files, tmp_path):
    out, tr = tmp_path / "r.json", tmp_path / "t.jsonl"
    src = files("s.json", fixture("square-hole"))
    assert run_cli("solve", "--in", src, "--out", str(out), "--trace", str(tr), "--rewind-mode", "replay") == 0
    assert json.loads(out.read_text())["distance"] == pytest.approx(1 + 2 * math.sqrt(2.5), abs=1e-6)
    assert all(json.loads(line)["type"] in ("I", "II", "III", "IV") for line in tr.read_text().splitlines())


def test_malformed_json_exits_1(files, capsys):
    assert run_cli("solve", "--in", files("bad.json", '{"outer": [')) == 1
    assert "syntax error" in capsys.readouterr().err


def test_missing_file_exits_1(capsys):
    assert run_cli("solve", "--in", "/nonexistent/x.json") == 1
    assert "cannot read" in capsys.readouterr().err


def test_disconnected_exits_2(files, monkeypatch, capsys):
    def boom(self):
        raise EngineError("disconnected")
    monkeypatch.setattr(cli.Engine, "run", boom)
    assert run_cli("solve", "--in", files("f.json", fixture("free"))) == 2
    assert "disconnected" in capsys.readouterr().err


def test_oracle_command(files, capsys):
    assert run_cli("oracle", "--in", files("f.json", fixture("square-hole"))) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["distance"] == pytest.approx(1 + 2 * math.sqrt(2.5), abs=1e-12)


def test_compare_free_has_zero_error(files, capsys):
    assert run_cli("compare", "--in", files("f.json", fixture("free"))) == 0
    assert json.loads(capsys.readouterr().out)["max_rel_error"] == 0.0


def test_compare_random_batch(capsys):
    assert run_cli("compare", "--random", "3,4,8", "--count", "5") == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["instances"] == 5 and rep["max_rel_error"] <= 1e-6 and rep["path_failures"] == 0


def test_injected_fault_is_caught(capsys):
    assert run_cli("compare", "--random", "1,2,8", "--inject-fault") == 1
    assert json.loads(capsys.readouterr().out)["max_rel_error"] > 1e-6


def test_compare_bad_random_arg(capsys):
    assert run_cli("compare", "--random", "1,2") == 1


def test_decompose_json_and_off(files, capsys):
    src = files("s.json", fixture("square-hole"))
    assert run_cli("decompose", "--in", src) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["junctions"] and doc["corridors"]
    assert run_cli("decompose", "--in", src, "--dump-tri") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "OFF"
    nv, nt, _ = map(int, lines[1].split())
    assert len(lines) == 2 + nv + nt


def test_bench_two_rows(capsys):
    assert run_cli("bench", "--m-list", "2,4", "--seeds", "2") in (0, 1)
    rep = json.loads(capsys.readouterr().out)
    assert [r["m"] for r in rep["rows"]] == [2, 4]
    assert "ratio" in rep["rows"][1] and "bunch_peak_c" in rep


def test_bench_free_baseline(capsys):
    run_cli("bench", "--m-list", "0", "--seeds", "1")
    row = json.loads(capsys.readouterr().out)["rows"][0]
    assert row["mean"]["events_III"] == 0 and row["mean"]["events_IV"] == 0


def test_trace_dump_trees(files, capsys):
    assert run_cli("trace", "--in", files("c.json", fixture("comb")), "--dump-trees") == 0
    recs = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert any(r["type"] == "tree" for r in recs)
    assert any(r["type"] == "III" for r in recs)


def test_outputs_byte_identical(files, tmp_path):
    src = files("t.json", fixture("two-holes"))
    blobs = []
    for i in range(2):
        o = tmp_path / ("o%d" % i)
        cli.main(["solve", "--in", src, "--out", str(o) + ".solve"])
        cli.main(["compare", "--random", "7,3,8", "--count", "2", "--out", str(o) + ".cmp"])
        cli.main(["bench", "--m-list", "1,2", "--seeds", "2", "--out", str(o) + ".bench"])
        blobs.append([open(str(o) + ext, "rb").read() for ext in (".solve", ".cmp", ".bench")])
    assert blobs[0] == blobs[1]


def test_console_script_runs(files):
    src = files("f.json", fixture("free"))
    r = subprocess.run([sys.executable, "-m", "spwave.cli", "solve", "--in", src],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and json.loads(r.stdout)["distance"] == 4.0

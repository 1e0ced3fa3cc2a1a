import json
import os
import subprocess
from pathlib import Path

import pytest

import pyaec

AEC = os.environ.get("AEC_BIN", "aec")


def run(*args, cwd=None):
    return subprocess.run([AEC, *map(str, args)], capture_output=True, text=True, cwd=cwd)


def write_cycle(path, n):
    path.write_text(f"{n} {n}\n" + "".join(f"{i} {(i + 1) % n}\n" for i in range(n)))


def write_colouring(path, palette, colours):
    path.write_text(json.dumps({"palette_size": palette, "colours": {str(e): c for e, c in enumerate(colours)}}))


def test_usage_errors_exit_2(tmp_path):
    assert run().returncode == 2
    assert run("frobnicate").returncode == 2
    assert run("schedule", "--eps", "0.5").returncode == 2
    assert run("color", tmp_path / "missing.txt").returncode == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 0\n")
    assert run("verify", bad, bad).returncode == 2


def test_verify_acyclic_and_bicoloured(tmp_path):
    graph = tmp_path / "c4.txt"
    write_cycle(graph, 4)
    good = tmp_path / "good.json"
    write_colouring(good, 3, [0, 1, 0, 2])
    assert run("verify", graph, good, "--total").returncode == 0

    bad = tmp_path / "bad.json"
    write_colouring(bad, 3, [1, 2, 1, 2])
    out = run("verify", graph, bad)
    assert out.returncode == 1
    assert "0 1 2 3" in out.stdout + out.stderr


def test_colour_then_verify(tmp_path):
    graph = tmp_path / "g.txt"
    assert run("gen", "--family", "cayley", "--n", 200, "--d", 6, "--seed", 3, "--out", graph).returncode == 0
    for algo in ("nibble", "repair"):
        out = tmp_path / f"{algo}.json"
        res = run("color", graph, "--algo", algo, "--eps", 0.5, "--seed", 4, "--out", out)
        assert res.returncode == 0, res.stderr
        assert run("verify", graph, out, "--total", "--colors", 9).returncode == 0


def test_outputs_are_byte_identical(tmp_path):
    runs = []
    for k in range(2):
        d = tmp_path / str(k)
        d.mkdir()
        assert run("gen", "--n", 120, "--d", 4, "--seed", 9, "--out", d / "g.txt").returncode == 0
        assert run("color", d / "g.txt", "--seed", 2, "--out", d / "c.json", "--trace", d / "t.jsonl").returncode == 0
        assert run("embed", d / "g.txt", "--girth", 4, "--seed", 1, "--out", d / "e.txt").returncode == 0
        exp = run("experiment", "--graph", d / "g.txt", "--seeds", 2, "--no-timing")
        assert exp.returncode == 0
        sched = run("schedule", "--eps", 0.5, "--delta", 100, "--girth", 6, "--iterations", 3)
        runs.append([(d / name).read_bytes() for name in ("g.txt", "c.json", "t.jsonl", "e.txt", "e.txt.json")]
                    + [exp.stdout, sched.stdout])
    assert runs[0] == runs[1]


def schedule_i_star(stdout):
    for line in stdout.splitlines():
        if line.startswith("# i_star,"):
            return int(line.split(",")[1])
    raise AssertionError("no i_star row")


def test_schedule_matches_library():
    res = run("schedule", "--eps", 0.5, "--delta", 10**19, "--girth", 64)
    assert res.returncode == 0
    assert schedule_i_star(res.stdout) == pyaec.schedule(0.5, 10**19, 64)["i_star"]

    # At Delta = 1e8 the stopping rule has no solution; both sides report it.
    res = run("schedule", "--eps", 0.5, "--delta", 10**8, "--girth", 64)
    assert res.returncode == 1
    with pytest.raises(pyaec.ScheduleError):
        pyaec.schedule(0.5, 10**8, 64)


def test_embed_sidecar(tmp_path):
    graph = tmp_path / "star.txt"
    graph.write_text("4 3\n0 1\n0 2\n0 3\n")
    out = tmp_path / "e.txt"
    assert run("embed", graph, "--girth", 5, "--out", out).returncode == 0
    meta = json.loads(Path(str(out) + ".json").read_text())
    assert meta["girth_target"] == 5 and len(meta["copy0"]) == 4
    g = pyaec.load_graph(str(out))
    assert g.girth() >= 5

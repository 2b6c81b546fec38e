import io
import json
import subprocess
import sys

import pytest

from limit_cheeger.cli import compare_graph_graphon, run
from limit_cheeger.graphon import WeightedGraph


def _run(argv, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def k2_file(tmp_path):
    p = tmp_path / "k2.txt"
    p.write_text("# K2\n2\n1 2\n")
    return str(p)


@pytest.fixture
def c4_file(tmp_path):
    p = tmp_path / "c4.txt"
    p.write_text("4\n1 2\n2 3\n3 4\n4 1 1\n")
    return str(p)


def test_cheeger_k2_gallery():
    code, out, _ = _run(["cheeger", "--gallery", "k2", "--fractional"])
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == 0.5 and rep["certified"] is True and "method" in rep


def test_cheeger_graph_integral(c4_file):
    code, out, _ = _run(["cheeger", "--graph", c4_file, "--integral"])
    assert code == 0 and json.loads(out)["value"] == 0.5


def test_verify_sandwich_wn():
    code, out, _ = _run(["verify", "--gallery", "wn:8", "--which", "sandwich"])
    rep = json.loads(out)
    assert code == 0
    assert rep["buser_ok"] and rep["cheeger_ok"] and rep["buser_sym_ok"]


@pytest.mark.parametrize("which", ["adjoint", "coarea"])
def test_verify_identities(which):
    code, out, _ = _run(["verify", "--gallery", "k2", "--which", which])
    assert code == 0, out


def test_lambda_and_coarea():
    code, out, _ = _run(["lambda", "--gallery", "k2"])
    assert code == 0 and json.loads(out)["lambda"] == 1.0
    code, out, _ = _run(["coarea", "--gallery", "k2", "--function", "0,1"])
    assert code == 0 and json.loads(out)["max_abs_gap"] == 0.0


def test_input_errors(tmp_path):
    assert _run(["cheeger", "--graph", str(tmp_path / "missing.txt")])[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n1 2\n1 2\n")
    code, _, err = _run(["cheeger", "--graph", str(bad)])
    assert code == 2 and "error" in err
    assert _run(["coarea", "--gallery", "k2", "--function", "1,2,3"])[0] == 2
    assert _run(["gallery", "nonesuch"])[0] == 2
    code, _, err = _run(["cheeger", "--unknown-flag"])
    assert code == 2


def test_check_failure_exit_code():
    # a rational rotation has a periodic orbit: the disjoint-translate construction fails
    code, out, err = _run(["graphing", "rotation", "--alpha", "0.5", "--cut", "3"])
    assert code == 1
    assert json.loads(out)["rows"][0]["valid"] is False


def test_compare_k2(k2_file):
    code, out, _ = _run(["compare", "--graph", k2_file])
    rep = json.loads(out)
    assert code == 0
    assert rep["h_G"] == 1 and rep["h_W"] == 0.5 and rep["ratio"] == 0.5
    assert rep["best_bound"] < 0 and rep["convention_note"]


def test_compare_complete_graph():
    rep = compare_graph_graphon(WeightedGraph.complete(10))
    assert rep["lambda_G"] == pytest.approx(10 / 9)
    assert rep["lambda_W"] == pytest.approx(1.0)


def test_compare_disconnected(tmp_path):
    p = tmp_path / "dis.txt"
    p.write_text("4\n1 2\n3 4\n")
    code, _, err = _run(["compare", "--graph", str(p)])
    assert code == 2 and "disconnected" in err


@pytest.mark.parametrize("argv", [
    ["cheeger", "--gallery", "wn:6", "--seed", "5"],
    ["gallery", "wn", "--sweep", "3:6", "--format", "csv"],
    ["gallery", "k2", "--doubling", "4", "--format", "csv"],
    ["graphing", "rotation", "--alpha", "golden", "--cut", "1:5", "--lambda-k", "1000", "--audit", "20"],
    ["cheeger", "--gallery", "vanishing:4", "--level", "4", "--starts", "8"],
])
def test_byte_identical_reruns(argv):
    a, b = _run(argv), _run(argv)
    assert a[0] == 0 and a == b


def test_csv_output():
    code, out, _ = _run(["gallery", "wn", "--sweep", "3:4", "--format", "csv"])
    lines = out.splitlines()
    assert code == 0 and lines[0] == "instance,quantity,value"
    assert any(line.startswith("gallery[3],h,") for line in lines)


def test_seed_environment_override(tmp_path):
    g = tmp_path / "g.txt"
    # 16-vertex ring with chords: takes the heuristic fractional path
    edges = [(i, i % 16 + 1) for i in range(1, 17)] + [(i, (i + 4) % 16 + 1) for i in range(1, 17, 3)]
    g.write_text("16\n" + "".join(f"{u} {v}\n" for u, v in edges))
    cmd = [sys.executable, "-m", "limit_cheeger.cli", "cheeger", "--graph", str(g), "--starts", "4"]
    env_runs = [subprocess.run(cmd, capture_output=True, text=True, env={"LIMIT_CHEEGER_SEED": "7", "PATH": ""})
                for _ in range(2)]
    explicit = subprocess.run(cmd + ["--seed", "7"], capture_output=True, text=True)
    assert env_runs[0].returncode == 0, env_runs[0].stderr
    assert env_runs[0].stdout == env_runs[1].stdout == explicit.stdout
    bad = subprocess.run(cmd, capture_output=True, text=True, env={"LIMIT_CHEEGER_SEED": "x", "PATH": ""})
    assert bad.returncode == 2

import json
import subprocess
import sys

import pytest

from l2mbqc.cli import main


def run_cli(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_compile_or(capsys):
    code, out, _ = run_cli(capsys, "compile", "--n", "2", "--anf", "x1*x2+x1+x2")
    doc = json.loads(out)
    assert code == 0 and len(doc["qubits"]) == 3
    assert {q["mask"] for q in doc["qubits"]} == {"10", "01", "11"}
    assert all(q["theta"]["log2den"] == 1 for q in doc["qubits"])


def test_compile_methods(capsys):
    code, out, _ = run_cli(capsys, "compile", "--method", "delta", "--n", "3")
    assert code == 0 and len(json.loads(out)["qubits"]) == 7
    code, out, _ = run_cli(capsys, "compile", "--method", "quadratic", "--n", "2", "--anf", "x1*x2")
    assert code == 0 and len(json.loads(out)["P"]) == 3
    code, out, _ = run_cli(capsys, "compile", "--method", "quadratic", "--n", "3", "--anf", "x1*x2*x3")
    assert code == 1 and "error" in json.loads(out)


def test_qcount_delta3(capsys, tmp_path):
    f = write(tmp_path, "delta3.json", {"n": 3, "anf": "1 + x1 + x2 + x3 + x1*x2 + x1*x3 + x2*x3 + x1*x2*x3"})
    code, out, _ = run_cli(capsys, "qcount", "--anf-file", f, "--exact")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 7 and doc["exact_within_class"]
    code, out, _ = run_cli(capsys, "qcount", "--anf-file", f, "--bounds")
    assert json.loads(out)["count"] == 7 and not json.loads(out)["exact_within_class"]


def test_simulate_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "compile", "--n", "2", "--anf", "x1*x2+x1+x2")
    s = write(tmp_path, "s.json", json.loads(out))
    t = write(tmp_path, "f.json", {"n": 2, "anf": "x1*x2+x1+x2"})
    code, out, _ = run_cli(capsys, "simulate", "--scheme", s, "--target", t)
    doc = json.loads(out)
    assert code == 0 and doc["p_succ"] == 1.0 and doc["deterministic"]
    code, out, _ = run_cli(capsys, "simulate", "--scheme", s, "--target", t, "--shots", "20", "--seed", "4")
    first = out
    _, again, _ = run_cli(capsys, "simulate", "--scheme", s, "--target", t, "--shots", "20", "--seed", "4")
    assert first == again and json.loads(first)["samples"]["11"] == 20


def test_simulate_stabilizer(capsys, tmp_path):
    _, out, _ = run_cli(capsys, "compile", "--method", "quadratic", "--n", "3", "--anf", "x1*x2 + x3")
    s = write(tmp_path, "ss.json", json.loads(out))
    code, out, _ = run_cli(capsys, "simulate", "--scheme", s, "--n", "3", "--anf", "x1*x2 + x3")
    assert code == 0 and json.loads(out)["p_succ"] == 1.0
    code, out, _ = run_cli(capsys, "level", "--scheme", s)
    assert json.loads(out) == {"level": 2}


def test_nq(capsys):
    code, out, _ = run_cli(capsys, "nq", "--n", "3", "--anf", "x1*x2*x3")
    assert code == 0 and json.loads(out) == {"nq": 1, "p_succ": "7/8", "nearest": {"anf": "0"}}


def test_level(capsys, tmp_path):
    _, out, _ = run_cli(capsys, "compile", "--method", "delta", "--n", "4")
    s = write(tmp_path, "d4.json", json.loads(out))
    code, out, _ = run_cli(capsys, "level", "--scheme", s)
    assert code == 0 and json.loads(out)["level"] == 4


def test_qudit(capsys):
    code, out, _ = run_cli(capsys, "qudit-delta", "--d", "3", "--n", "2")
    doc = json.loads(out)
    assert code == 0 and doc["N"] == 8 and doc["all_correct"] and len(doc["rows"]) == 9
    code, out, _ = run_cli(capsys, "qudit-delta", "--d", "4", "--n", "1")
    assert code == 1


def test_adaptive(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "adaptive", "--kind", "chain", "--fan-in", "10")
    doc = json.loads(out)
    assert code == 0 and doc["metrics"]["width"] == 3 and doc["metrics"]["volume"] == 27
    assert doc["computes_and"]
    from l2mbqc.adaptive import tree_and
    g = write(tmp_path, "g.json", tree_and(4).to_json())
    code, out, _ = run_cli(capsys, "adaptive", "--graph", g)
    assert code == 0 and json.loads(out)["output"]["anf"] == "x1*x2*x3*x4"
    bad = tree_and(4).to_json()
    bad["nodes"][-1]["label"] = 1
    code, out, _ = run_cli(capsys, "adaptive", "--graph", write(tmp_path, "bad.json", bad))
    assert code == 1 and "ScheduleError" in json.loads(out)["error"]


def test_verify_subset(capsys):
    code, out, _ = run_cli(capsys, "verify-paper", "--only", "1,9")
    doc = json.loads(out)
    assert code == 0 and doc["all_passed"] and [c["id"] for c in doc["criteria"]] == [1, 9]
    _, again, _ = run_cli(capsys, "verify-paper", "--only", "1,9")
    assert out == again
    code, out, _ = run_cli(capsys, "verify-paper", "--only", "1", "--pretty")
    assert out.startswith("[PASS] C1")


@pytest.mark.parametrize("args", [
    ["compile", "--bogus"],
    ["compile", "--anf", "x1"],
    ["compile", "--n", "2", "--anf", "x1", "--tt-hex", "2"],
    ["simulate", "--scheme", "x.json", "--tol", "-1"],
    ["verify-paper", "--only", "a,b"],
    ["verify-paper", "--only", "11"],
    ["adaptive", "--fan-in", "1"],
    [],
])
def test_usage_errors(capsys, args):
    code, _, err = run_cli(capsys, *args)
    assert code == 2 and "usage" in err


@pytest.mark.parametrize("args", [
    ["compile", "--n", "2", "--anf", "x1*x3"],
    ["simulate", "--scheme", "/nonexistent/s.json"],
    ["nq", "--n", "7", "--anf", "x1"],
])
def test_domain_errors(capsys, args):
    code, out, _ = run_cli(capsys, *args)
    assert code == 1 and "error" in json.loads(out)


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("MBQC_THREADS", "0")
    code, _, _ = run_cli(capsys, "nq", "--n", "2", "--anf", "x1")
    assert code == 2


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "o.json"
    code, out, _ = run_cli(capsys, "compile", "--n", "1", "--anf", "x1", "--out", str(target))
    assert code == 0 and out == "" and json.loads(target.read_text())["n"] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "l2mbqc", "nq", "--n", "2", "--anf", "x1*x2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["nq"] == 0

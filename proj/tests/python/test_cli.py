"""Drives the installed command-line binary through its subcommands."""

import csv
import json
import os
import subprocess

import pytest

CLI = os.environ.get("WARMCG_CLI", "warmcg")


def run_cli(*args, expect=0):
    proc = subprocess.run(
        [CLI, *map(str, args)], capture_output=True, text=True, timeout=300
    )
    assert proc.returncode == expect, proc.stderr or proc.stdout
    return proc


@pytest.fixture(scope="module")
def toy(tmp_path_factory):
    base = tmp_path_factory.mktemp("cli")
    data = base / "toy.jsonl"
    sets = base / "toy-sets.jsonl"
    run_cli("gen-toy", "--out", data)
    run_cli("identify", "--data", data, "--out", sets)
    return base, data, sets


def test_version():
    proc = run_cli("--version")
    assert "warmcg" in proc.stdout


def test_help_lists_subcommands():
    proc = run_cli("--help")
    for sub in ("gen-toy", "gen-synthetic", "gen-uc", "solve", "identify", "predict",
                "benchmark", "report"):
        assert sub in proc.stdout


def test_solve_outputs_json(toy):
    _, data, _ = toy
    proc = run_cli("solve", "--data", data, "--name", "toy-test")
    out = json.loads(proc.stdout)
    assert out["status"] == "optimal"
    assert out["objective"] == pytest.approx(-0.5)
    assert out["solution"] == pytest.approx([0.5, 1.0])


def test_solve_unknown_name_fails(toy):
    _, data, _ = toy
    proc = run_cli("solve", "--data", data, "--name", "missing", expect=1)
    assert "error:" in proc.stderr


def test_identify_writes_sets(toy):
    _, _, sets = toy
    lines = [json.loads(line) for line in sets.read_text().splitlines()]
    assert [d["name"] for d in lines] == ["toy-b1.00", "toy-b1.25", "toy-b1.50", "toy-test"]
    assert lines[0]["binding"] == [2]
    assert lines[0]["invariant"] == [1, 2]
    assert lines[2]["invariant"] == [1, 2, 3]


def test_predict_uses_stored_sets(toy):
    _, data, sets = toy
    proc = run_cli(
        "predict", "--data", data, "--sets", sets, "--query", "toy-test", "--k", 2
    )
    out = json.loads(proc.stdout)
    assert out["name"] == "toy-test"
    assert out["predicted"] == [1, 2, 3]

    proc = run_cli(
        "predict", "--data", data, "--sets", sets, "--query", "toy-test", "--k", 1,
        "--source", "binding",
    )
    assert json.loads(proc.stdout)["predicted"] == [2]


def test_benchmark_writes_metrics(toy):
    base, data, sets = toy
    out = base / "metrics.csv"
    proc = run_cli(
        "benchmark", "--data", data, "--method", "s-learner", "--k", "1,2",
        "--sets", sets, "--out", out,
    )
    assert "s-learner" in proc.stdout

    with out.open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 8  # 4 folds x 2 ks
    assert {r["method"] for r in rows} == {"s-learner"}
    assert all(r["match"] == "1" for r in rows)
    assert all(r["I"] == "1" for r in rows)

    report = run_cli("report", "--metrics", out)
    summary = json.loads(report.stdout)
    assert summary["groups"][0]["P1"] == pytest.approx(100.0)


def test_benchmark_rejects_corrupted_sets(toy):
    base, data, sets = toy
    bad = base / "bad-sets.jsonl"
    lines = sets.read_text().splitlines()
    doc = json.loads(lines[0])
    doc["invariant"] = [99]  # alien row id for this dataset
    bad.write_text("\n".join([json.dumps(doc)] + lines[1:]) + "\n")

    proc = run_cli(
        "benchmark", "--data", data, "--method", "s-learner", "--k", 1,
        "--sets", bad, "--out", base / "unused.csv", expect=1,
    )
    assert "error:" in proc.stderr


def test_unknown_method_fails(toy):
    base, data, _ = toy
    proc = run_cli(
        "benchmark", "--data", data, "--method", "quantum", "--out",
        base / "unused2.csv", expect=1,
    )
    assert "error:" in proc.stderr

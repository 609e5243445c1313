import json
import subprocess
import sys
from pathlib import Path

import pytest

from excalg import cli

GOLDEN = Path(__file__).parent / "golden"


def run(*args):
    return subprocess.run([sys.executable, "-m", "excalg.cli", *args], capture_output=True, text=True)


def test_verify_cosets_exit_zero(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--suite", "cosets", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == "excalg.report/1"
    assert rep["pass"] and rep["unexpected_failures"] == 0
    assert rep["provenance"]["field"] == "q"
    assert "cosets: PASS" in capsys.readouterr().err


def test_documented_failure_exit_codes(tmp_path):
    out = tmp_path / "r.json"
    args = ["verify", "--suite", "jordan", "--field", "fp:5", "--samples", "20", "--out", str(out)]
    assert cli.main(args) == 0
    rep = json.loads(out.read_text())
    assert not rep["pass"] and rep["suites"][0]["expected_failures"] == 1
    assert cli.main(args + ["--strict"]) == 1


@pytest.mark.parametrize("field", ["fp:3", "fp:4", "r"])
def test_bad_field(field, capsys):
    assert cli.main(["verify", "--suite", "cosets", "--field", field]) == 2
    assert "excalg:" in capsys.readouterr().err


def test_bad_threads(monkeypatch):
    monkeypatch.setenv("EXCALG_THREADS", "x")
    assert cli.main(["verify", "--suite", "cosets"]) == 2


def test_report_deterministic_and_timings_separate(tmp_path):
    a, ta = cli.run_verify("q", "cosets", seed=5)
    b, _ = cli.run_verify("q", "cosets", seed=5)
    assert cli.dumps(a) == cli.dumps(b)
    assert "cosets" in ta and "timings" not in cli.dumps(a)
    assert cli.suite_seed(5, "cosets") != cli.suite_seed(5, "shalika")


def test_threads_do_not_change_report(monkeypatch):
    fast = {k: cli.SUITES[k] for k in ("composition", "jordan", "cosets", "shalika")}
    monkeypatch.setattr(cli, "SUITES", fast)
    one, _ = cli.run_verify("fp:7", "all", seed=2, samples=10)
    monkeypatch.setenv("EXCALG_THREADS", "4")
    four, _ = cli.run_verify("fp:7", "all", seed=2, samples=10)
    assert cli.dumps(one) == cli.dumps(four)
    assert one["unexpected_failures"] == 0
    assert [x["suite"] for x in one["suites"]] == list(fast)


def test_cosets_command(capsys):
    assert cli.main(["cosets"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["cosets"]["double_coset_count"] == 5


def test_tables_json(capsys):
    assert cli.main(["tables", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["mismatches"] == ["dual_pairs: k/B target", "dual_pairs: B/C sub"]


def test_dump_list_and_unknown(capsys):
    assert cli.main(["dump", "--list"]) == 0
    assert capsys.readouterr().out.split("\n")[:2] == ["koecher(J_k)", "koecher(J_K)"]
    assert cli.main(["dump", "--algebra", "nope"]) == 2
    assert cli.main(["dump"]) == 2


def test_dump_subprocess_matches_golden(tmp_path):
    out = tmp_path / "kJk.jsonl.gz"
    r = run("dump", "--algebra", "koecher(J_k)", "--out", str(out))
    assert r.returncode == 0, r.stderr
    assert out.read_bytes() == (GOLDEN / "koecher_J_k.jsonl.gz").read_bytes()


def test_dump_jsonl(capsys):
    assert cli.main(["dump", "--algebra", "allison(k(x)B)"]) == 0
    lines = capsys.readouterr().out.splitlines()
    head = json.loads(lines[0])
    assert len(head["labels"]) == 21
    assert all(set(json.loads(x)) == {"i", "j", "k", "c"} for x in lines[1:50])

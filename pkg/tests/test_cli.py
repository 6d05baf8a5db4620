import csv
import json
import os
import subprocess
import sys

import pytest

from cutbranch.cli import main
from cutbranch.report import CheckRecord, ExperimentReport, Job, run_job, run_jobs, stringify, thread_cap


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_knapsack_single_row(capsys):
    code, out, _ = _run(capsys, "generate", "knapsack", "--n", "4", "--q", "3")
    obj = json.loads(out)
    assert code == 0 and len(obj["constraints"]) == 1
    assert obj["constraints"][0]["rhs"] == "4" and obj["constraints"][0]["sense"] == "<="


def test_generate_r3_has_seven_points(capsys):
    code, out, _ = _run(capsys, "generate", "r3")
    assert code == 0 and len(json.loads(out)["metadata"]["points"]) == 7


def test_generate_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["generate", "random", "--n", "3", "--seed", "7", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_tree_skewed_counts(capsys):
    code, out, _ = _run(capsys, "tree", "skewed", "--n", "4", "--k", "2")
    stats = json.loads(out)["stats"]
    assert code == 0 and stats["leaves"] == 11 and stats["size"] == 21


def test_tree_nogood_size(capsys):
    code, out, _ = _run(capsys, "tree", "nogood", "--n", "3", "--S", "000")
    assert code == 0 and json.loads(out)["stats"]["size"] <= 9


def test_tree_greedy_from_instance_file(tmp_path, capsys):
    path = tmp_path / "k3.json"
    assert main(["generate", "stable-set", "--n", "3", "--out", str(path)]) == 0
    code, out, _ = _run(capsys, "tree", "greedy", "--instance", str(path))
    assert code == 0 and json.loads(out)["stats"]["equals_integer_hull"] is True


def test_tree_dot_keeps_stdout_clean(capsys):
    code, out, err = _run(capsys, "tree", "skewed", "--n", "3", "--k", "1", "--format", "dot")
    assert code == 0 and out.startswith("digraph") and json.loads(err)["leaves"] == 4


def test_relax_sa_membership(capsys):
    code, out, _ = _run(capsys, "relax", "sa", "--family", "stable-set", "--n", "4", "--t", "1",
                        "--member", "1/3,1/3,1/3,1/3")
    assert code == 0 and json.loads(out)["member"] is True


def test_relax_bk_objective_on_r3(capsys):
    code, out, _ = _run(capsys, "relax", "bk", "--family", "r3", "--k", "2", "--objective", "0,-1,1")
    res = json.loads(out)
    assert code == 0 and res["max"]["value"] == "1/4"


def test_relax_budget_gives_undecided(capsys):
    code, out, _ = _run(capsys, "relax", "sa", "--family", "stable-set", "--n", "4", "--t", "3",
                        "--budget-sa-level", "2")
    assert code == 0 and json.loads(out)["status"] == "undecided"


@pytest.mark.parametrize("argv", [
    ["generate", "nosuchfamily"],
    ["relax", "sa", "--family", "stable-set", "--n", "3"],
    ["relax", "sa", "--family", "stable-set", "--n", "3", "--t", "1", "--member", "1/2"],
    ["tree", "skewed", "--n", "3"],
    ["repro", "example1", "--budget-trees", "0"],
    ["generate", "knapsack", "--n", "4", "--q", "3", "--format", "csv"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_repro_writes_csv(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code = main(["repro", "example1", "--n", "3", "--format", "csv", "--out", str(out)])
    rows = list(csv.DictReader(out.open()))
    assert code == 0 and {r["status"] for r in rows} == {"pass"}
    assert rows[0]["check_id"].startswith("example1/n3")


def test_repro_failure_exits_1(monkeypatch, capsys):
    import cutbranch.checks as checks

    monkeypatch.setattr(checks, "degeneracy_families", lambda: (False, {"forced": True}, None))
    code, out, err = _run(capsys, "repro", "clique", "--n", "4")
    assert code == 1 and "FAIL" in out and "degeneracy" in err


def test_thread_cap_env(monkeypatch):
    monkeypatch.delenv("CUTBRANCH_THREADS", raising=False)
    assert thread_cap() == 1
    monkeypatch.setenv("CUTBRANCH_THREADS", "1000")
    assert thread_cap() == (os.cpu_count() or 1)
    monkeypatch.setenv("CUTBRANCH_THREADS", "zero")
    with pytest.raises(ValueError):
        thread_cap()


def test_console_script_with_threads(tmp_path):
    env = dict(os.environ, CUTBRANCH_THREADS="2")
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "cutbranch.cli", "repro", "skewed", "--n", "4",
                           "--out", str(out)], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    report = json.loads(out.read_text())
    assert report["status"] == "pass"
    assert [r["check_id"] for r in report["records"]] == sorted(r["check_id"] for r in report["records"])


def test_records_are_deterministic_apart_from_wall_time():
    job = Job("x", "example1", "claim", "anchor", "stable_sa_point", (("k", 1), ("n", 3)))
    a, b = run_job(job), run_job(job)
    a.seconds = b.seconds = 0.0
    assert a == b and a.witness == ["1/3", "1/3", "1/3"]


def test_crashing_check_is_a_failure():
    rec = run_job(Job("x", "s", "c", "a", "stable_sa_point", (("n", 3),)))
    assert rec.status == "fail" and "TypeError" in rec.error


def test_budget_in_check_is_undecided():
    rec = run_jobs([Job("x", "s", "c", "a", "stable_sa_point", (("k", 9), ("n", 10)))])[0]
    assert rec.status == "undecided"


def test_report_status_and_serialisation():
    recs = [CheckRecord("b", "s", "c", "a", "pass"), CheckRecord("a", "s", "c", "a", "undecided")]
    rep = ExperimentReport("e", {}, recs)
    assert rep.status == "undecided" and json.loads(rep.dumps())["status"] == "undecided"
    assert "1/2 checks passed" in rep.human()


def test_stringify_keeps_ints():
    from fractions import Fraction

    assert stringify({"a": 3, "b": Fraction(1, 2), "c": [True, None]}) == {"a": 3, "b": "1/2", "c": [True, None]}

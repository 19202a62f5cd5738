import json
import subprocess
import sys

import pytest

from bckit import cli


def run(tmp_path, *args, env=None, name="out.json"):
    out = tmp_path / name
    code = cli.main(["verify", *args, "--out", str(out)], env or {})
    return code, out.read_bytes() if out.exists() else None


def test_unknown_suite_exits_2(capsys):
    assert cli.main(["verify", "bogus"], {}) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_unknown_mutation_exits_2(capsys):
    assert cli.main(["verify", "coeffs", "--mutation", "NOPE"], {}) == 2
    assert "unknown mutation" in capsys.readouterr().err


@pytest.mark.parametrize("args", [["--max-n", "0"], ["--trials", "-1"], ["--jobs", "0"],
                                  ["--seed", str(2 ** 64)], ["--seed", "-1"]])
def test_bad_values_exit_2(args):
    assert cli.main(["verify", "coeffs", *args], {}) == 2


def test_bad_environment_exits_2():
    assert cli.main(["verify", "coeffs"], {"BCKIT_SEED": "seven"}) == 2


def test_unwritable_out_exits_2(tmp_path):
    assert cli.main(["verify", "coeffs", "--out", str(tmp_path)], {}) == 2
    missing = tmp_path / "no" / "such" / "dir" / "r.json"
    assert cli.main(["verify", "coeffs", "--out", str(missing)], {}) == 2


def test_passing_run_exits_0(tmp_path):
    code, data = run(tmp_path, "appendix", "--max-n", "2", "--jobs", "1")
    assert code == 0
    report = json.loads(data)
    assert report["version"] == "1"
    # APPA1 and APPA3 over (n, m), APPA2 over (n, m, l)
    assert report["summary"] == {"total": 4 + 8 + 4, "passed": 16, "failed": 0}
    assert [s["id"] for s in report["suites"]] == ["appendix"]


def test_failing_run_exits_1_with_witness(tmp_path):
    code, data = run(tmp_path, "coeffs", "--max-n", "2", "--mutation", "A-SIGN-FLIP", "--jobs", "1")
    assert code == 1
    report = json.loads(data)
    assert report["config"]["mutated"] is True
    failed = [c for s in report["suites"] for c in s["checks"] if c["status"] == "fail"]
    assert failed and all(c["witness"] for c in failed)
    assert report["summary"]["failed"] == len(failed)


def test_markdown_report(tmp_path):
    code, data = run(tmp_path, "product", "--max-n", "1", "--format", "md", "--jobs", "1",
                     "--normalize-timing", name="out.md")
    assert code == 0
    text = data.decode()
    assert text.startswith("# bckit report v1")
    assert "summary: 2/2 passed, 0 failed" in text
    assert "| P518 | n=1, m=1, l=1 | pass |  | 0 |" in text


def test_flags_override_environment():
    env = {"BCKIT_SEED": "5", "BCKIT_JOBS": "3"}
    cfg = cli.parse_config(["verify", "cubes"], env)
    assert cfg["seed"] == 5 and cfg["jobs"] == 3
    cfg = cli.parse_config(["verify", "cubes", "--seed", "9", "--jobs", "1"], env)
    assert cfg["seed"] == 9 and cfg["jobs"] == 1
    cfg = cli.parse_config(["verify", "cubes"], {})
    assert cfg["seed"] == cli.DEFAULT_SEED and cfg["trials"] == cli.DEFAULT_TRIALS


def test_suite_ranges():
    cfg = cli.parse_config(["verify", "all", "--max-n", "2"], {})
    tasks = {s: cli.suite_tasks(cfg, s) for s in cli.SUITES}
    ids = {cid for s in tasks.values() for _, cid, _ in s}
    assert {"P63", "LEIBNIZ", "L33", "CHAIN-SPLIT", "APPA2"} <= ids
    leibniz = [p for _, cid, p in tasks["forms"] if cid == "LEIBNIZ"]
    assert {"n": 0, "m": 0} not in leibniz
    assert max(p["n"] for _, cid, p in tasks["forms"] if cid == "P63") == 3
    pairs = [p for _, cid, p in tasks["cubes"] if cid == "P52-LEFT"]
    assert all(p["n"] + p["m"] <= 2 for p in pairs)


def test_jobs_do_not_change_the_report(tmp_path):
    args = ["cubes", "--max-n", "2", "--trials", "3", "--normalize-timing", "--seed", "4"]
    code1, one = run(tmp_path, *args, "--jobs", "1", name="a.json")
    code2, two = run(tmp_path, *args, "--jobs", "2", name="b.json")
    assert code1 == code2 == 0
    assert one == two


def test_timing_is_zeroed_only_on_request(tmp_path):
    _, data = run(tmp_path, "appendix", "--max-n", "2", "--jobs", "1", "--normalize-timing")
    report = json.loads(data)
    assert report["elapsed_ms"] == 0
    assert all(c["elapsed_ms"] == 0 for s in report["suites"] for c in s["checks"])


def test_console_entry_point_writes_stdout():
    proc = subprocess.run([sys.executable, "-m", "bckit.cli", "verify", "appendix", "--max-n", "1",
                           "--jobs", "1"], capture_output=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["failed"] == 0

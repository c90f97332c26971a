import json
import subprocess
import sys

import pytest

from dupontkit.cli import main, run_suite
from dupontkit.report import Report, make_check


def test_dupont_exit_zero(capsys):
    assert main(["verify", "dupont", "--n", "1", "--probes", "3", "--seed", "1"]) == 0
    assert "result: PASS" in capsys.readouterr().out


def test_compat_interval_notes_vanishing_defect(capsys):
    assert main(["verify", "compat", "--n", "1", "--face", "0,1", "--probes", "3"]) == 0
    assert "[PASS] (theorem) defect_vanishes" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [["verify", "stellar", "--n", "5"], ["verify", "dupont", "--n", "4"],
                                  ["verify", "compat", "--n", "2", "--face", "0,7"],
                                  ["verify", "cubical-compat", "--n", "2", "--k", "3"],
                                  ["verify", "compat", "--face", "a,b"]])
def test_out_of_range_exit_two(argv):
    assert main(argv) == 2


def test_unknown_suite_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2


def test_unwritable_path_exit_three(tmp_path):
    target = tmp_path / "missing" / "report.json"
    assert main(["verify", "collapse", "--n", "1", "--out", str(target)]) == 3


def test_json_schema(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "collapse", "--n", "2", "--face", "0,1", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert set(data) == {"suite", "params", "checks", "claims_failed", "elapsed_ms"}
    assert data["elapsed_ms"] is None
    for check in data["checks"]:
        assert check["kind"] in ("theorem", "claim") and check["status"] in ("pass", "fail")
    names = [c["name"] for c in data["checks"]]
    assert names == sorted(names)


def test_claim_failures_keep_exit_zero():
    code, report = run_suite("collapse", n=1)
    assert code == 0
    assert report.claims_failed == ["display_iota_average_vertices"]


def test_empty_report_is_valid_json():
    data = json.loads(Report("empty").to_json())
    assert data["checks"] == [] and data["claims_failed"] == []


def test_failing_theorem_flips_exit_code():
    r = Report("x")
    r.add(make_check("broken", False, counterexample={"input": "[0]", "lhs": "1", "rhs": "0"}))
    assert not r.passed
    assert json.loads(r.to_json())["checks"][0]["counterexample"]["input"] == "[0]"


def test_timing_flag_records_elapsed():
    _, report = run_suite("collapse", n=1, timing=True)
    assert isinstance(report.elapsed_ms, int)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dupontkit", "verify", "collapse", "--n", "1", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["suite"] == "collapse"

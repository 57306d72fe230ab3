import csv
import io
import json
import subprocess
import sys

import pytest

from rmlab.cli import main
from rmlab.experiments import ExperimentConfig, ValidationError, enumerate_ms_parts, gkp_floor, ld_floors, run
from rmlab.ffield import tower_create
from rmlab.gabidulin import GabidulinCode


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def strip_clock(report):
    report = dict(report)
    report.pop("wall_clock_s")
    return report


def test_trials_zero(capsys):
    code, out = run_cli(capsys, "gkp-mc", "--trials", "0")
    assert code == 0
    rep = json.loads(out.out)
    assert rep["trials"] == [] and rep["aggregate"]["pass_count"] == 0


def test_validation_exit(capsys):
    code, out = run_cli(capsys, "gkp-mc", "--k", "4", "--n", "3")
    assert code == 2 and "k <= n" in out.err
    assert run_cli(capsys, "gkp-mc", "--p", "4")[0] == 2
    assert run_cli(capsys, "gkp-mc", "--trials", "-1")[0] == 2


def test_usage_exit(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_guard_exit(capsys):
    code, out = run_cli(capsys, "min-distance", "--m", "64", "--n", "3", "--k", "2")
    assert code == 3 and "guard" in out.err


def test_gkp_mc_deterministic(capsys):
    argv = ["gkp-mc", "--m", "28", "--k", "2", "--ell", "2", "--trials", "3", "--seed", "7"]
    _, a = run_cli(capsys, *argv)
    _, b = run_cli(capsys, *argv)
    ra, rb = json.loads(a.out), json.loads(b.out)
    assert strip_clock(ra) == strip_clock(rb)
    assert ra["aggregate"]["pass_count"] == 3
    assert ra["config"]["seed"] == 7 and ra["version"]
    assert ra["floor"] == pytest.approx(1 - 6 * 2.0**-14)


def test_trial_independence():
    """Trial i does not depend on how many trials run."""
    base = dict(command="gkp-mc", m=28, k=2, ell=2, seed=11)
    short = run(ExperimentConfig(trials=2, **base))
    long = run(ExperimentConfig(trials=4, **base))
    assert long["trials"][:2] == short["trials"]


def test_floors():
    assert gkp_floor(2, 3, 2, 2, 28) == 1 - 6 * 2.0**-14
    stated, dual = ld_floors(2, 3, 1, 2, 28)
    assert stated == 1 - 6 * 2.0**-24 and dual == 1 - 6 * 2.0**-14


def test_csv(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, _ = run_cli(capsys, "equivalence", "--k", "1", "--trials", "2", "--format", "csv", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 2 and rows[0]["agree"] == "True"


def test_code_file_commands(capsys, tmp_path):
    t = tower_create(2, 1, 3)
    path = tmp_path / "code.json"
    path.write_text(json.dumps(GabidulinCode(t, 2, [1, 2, 4]).to_json()))
    code, out = run_cli(capsys, "min-distance", "--code", str(path))
    assert code == 0 and json.loads(out.out)["aggregate"]["min_rank_distance"] == 2
    code, out = run_cli(capsys, "dual", "--code", str(path))
    agg = json.loads(out.out)["aggregate"]
    assert code == 0 and agg["all_pairings_zero"] and agg["double_dual_equal"]
    code, out = run_cli(capsys, "encode", "--code", str(path), "--message", "[0, 1]")
    assert code == 0 and json.loads(out.out)["aggregate"]["codeword_ints"] == [1, 4, 6]
    code, out = run_cli(capsys, "encode", "--code", str(path), "--message", "[1]")
    assert code == 2


def test_missing_code_file(capsys, tmp_path):
    assert run_cli(capsys, "min-distance", "--code", str(tmp_path / "nope.json"))[0] == 2


def test_violation_exit(monkeypatch, capsys):
    import rmlab.experiments as ex

    def fake(cfg):
        return {"trials": [], "violations": 1}

    monkeypatch.setitem(ex.COMMANDS, "ms-scan", fake)
    assert run_cli(capsys, "ms-scan")[0] == 1


def test_ms_scan_small(capsys):
    code, out = run_cli(capsys, "ms-scan", "--m", "5", "--k", "2", "--trials", "2")
    rep = json.loads(out.out)
    assert code == 0 and rep["aggregate"]["hard_violations"] == 0


def test_ms_spec_enumeration_counts():
    specs = list(enumerate_ms_parts(3, 2, 2))
    # k=1: ({0},1); k=2: ({0},2) and ordered pairs of dim <= 1 with r=1
    assert len(specs) == 1 + 1 + 8 * 8


def test_equivalence_small(capsys):
    code, out = run_cli(capsys, "equivalence", "--k", "1", "--ell", "1", "--trials", "6", "--seed", "3")
    rep = json.loads(out.out)
    assert code == 0 and rep["aggregate"]["agreements"] == 6


def test_validate_rejects_mode():
    with pytest.raises(ValidationError):
        ExperimentConfig(command="gkp-mc", mode="bogus").validate()


def test_entry_point():
    r = subprocess.run([sys.executable, "-m", "rmlab.cli", "min-distance"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["aggregate"]["mrd"]

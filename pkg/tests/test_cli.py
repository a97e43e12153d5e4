import json
import subprocess
import sys
from pathlib import Path

import pytest

from eqdef.cli import main, render_json

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cyclic_basis(capsys):
    code, out, _ = run(capsys, "cyclic", "--p", "5", "--n", "6", "--a", "-7", "--basis", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"p": 5, "n": 6, "a": -7, "dim": 5, "basis": [2, 3, 5, 6, 7]}


def test_cyclic_zero_and_error(capsys):
    assert json.loads(run(capsys, "cyclic", "--p", "5", "--n", "1", "--a", "1", "--format", "json")[1])["dim"] == 0
    code, _, err = run(capsys, "cyclic", "--p", "5", "--n", "5", "--a", "0")
    assert code == 2 and "divisible by p" in err


def test_missing_arguments_exit_2(capsys):
    code, _, err = run(capsys, "cyclic", "--p", "5")
    assert code == 2 and "--n" in err
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2


def test_fermat_fixtures(capsys):
    code, out, _ = run(capsys, "local-bounds", "--filtration", str(FIX / "fermat_filtration.json"), "--format", "json")
    assert code == 0 and json.loads(out)["bounds"] == [1, 3]
    code, out, _ = run(capsys, "global", "--cover", str(FIX / "fermat_cover.json"), "--format", "json")
    assert json.loads(out) == {"global": 0}
    code, out, _ = run(capsys, "total", "--filtration", str(FIX / "fermat_filtration.json"),
                       "--cover", str(FIX / "fermat_cover.json"), "--format", "json")
    assert json.loads(out)["total"] == {"lower": 0, "upper": 0, "exact": 0}


def test_malformed_json_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 5,\n "jumps": [}\n')
    code, _, err = run(capsys, "local-bounds", "--filtration", str(bad))
    assert code == 2 and "line 2" in err
    worse = tmp_path / "worse.json"
    worse.write_text('{"p": 5, "tame_order": 1, "jumps": [{"t": 1}]}')
    code, _, err = run(capsys, "local-bounds", "--filtration", str(worse))
    assert code == 2 and "jumps[0]" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["example", "fermat", "--p", "5"],
        ["example", "pries", "--p", "13", "--j", "19", "--m", "6"],
        ["example", "lehr-matignon", "--p", "5", "--m", "2"],
        ["example", "pcover", "--p", "5", "--m", "7"],
        ["table-pries"],
        ["cyclic", "--p", "7", "--n", "3", "--a", "-2", "--basis"],
    ],
)
def test_json_round_trip(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    assert render_json(json.loads(out)) == out


def test_examples_values(capsys):
    q = json.loads(run(capsys, "example", "pries", "--p", "13", "--j", "19", "--m", "6", "--format", "json")[1])
    assert q["quantities"] == {"r": 3, "dim": 3, "global": 1, "total": 4}
    q = json.loads(run(capsys, "example", "fermat", "--p", "5", "--format", "json")[1])["quantities"]
    assert (q["dim_h1_G_p+1"], q["invariants"], q["global"], q["total"]) == (5, 2, 0, 0)
    code, _, _ = run(capsys, "example", "fermat", "--p", "3")
    assert code == 2


def test_table_pries_layout(capsys):
    _, out, _ = run(capsys, "table-pries")
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["p", "j", "m"]
    assert "4 (tab. 9)" in out
    assert any(l.split()[:7] == ["7", "90", "3", "26", "26", "24", "50"] for l in lines)
    _, csv_out, _ = run(capsys, "table-pries", "--format", "csv")
    assert csv_out.splitlines()[1] == "13,19,6,3,3,1,4"


def test_oracle_single_check_and_unstable(capsys):
    code, out, _ = run(capsys, "oracle", "--p", "5", "--n", "6", "--a", "-7")
    assert code == 0 and "1/1 passed" in out
    code, out, _ = run(capsys, "oracle", "--p", "5", "--n", "6", "--a", "-7", "--precision", "3")
    assert code == 1 and "UNSTABLE" in out


def test_oracle_sample_is_deterministic(capsys):
    argv = ["oracle", "--p", "5", "--n", "2", "--sample", "3", "--seed", "4", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    assert len(json.loads(first)["cases"]) == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "eqdef", "cyclic", "--p", "5", "--n", "6", "--a", "-7"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "dim" in res.stdout

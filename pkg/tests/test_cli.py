import json
import subprocess
import sys

import pytest

from fockcb import cli
from fockcb.errors import NonLaurentResult
from fockcb.fock import FockVector
from fockcb.heisenberg import vacuum_B_product

DELTA0 = ["canonical", "--n", "2", "--charge", "0,0", "--deficit", "2,2"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_canonical_json(capsys):
    code, out, _ = run(capsys, *DELTA0)
    assert code == 0
    data = json.loads(out)
    assert data["params"]["n"] == 2 and data["params"]["dimension"] == 16
    assert len(data["labels"]) == 16
    assert len(data["matrix"]["Δ+"]) == 86
    assert ["[[2,2],[]]", "[[2,2],[]]", "1"] in data["matrix"]["Δ+"]


def test_canonical_latex_and_csv(capsys):
    code, out, _ = run(capsys, *DELTA0, "--format", "latex")
    assert code == 0
    assert "\\begin{array}{*{16}{c}}" in out
    assert out.count("\\\\") >= 32
    code, out, _ = run(capsys, *DELTA0, "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "row,col,poly" and len(lines) == 87


def test_negative_charge_forms(capsys):
    a = run(capsys, "canonical", "--n", "2", "--charge", "-2,2", "--deficit", "2,2")
    b = run(capsys, "canonical", "--n", "2", "--charge=-2,2", "--deficit", "2,2")
    assert a[0] == b[0] == 0 and a[1] == b[1]


def test_both_bases_and_involution(capsys):
    code, out, _ = run(capsys, *DELTA0, "--basis", "both")
    data = json.loads(out)
    assert set(data["matrix"]) == {"Δ+", "Δ-"}
    code, out, _ = run(capsys, "involution", "--n", "2", "--charge", "0,0", "--deficit", "2,2")
    assert code == 0 and set(json.loads(out)["matrix"]) == {"A"}


def test_size_mode(capsys):
    code, out, _ = run(capsys, "canonical", "--n", "2", "--charge", "0,0", "--size", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "deficit,matrix,row,col,poly"


def test_verify_flag(capsys):
    code, _, err = run(capsys, *DELTA0, "--basis", "both", "--verify")
    assert code == 0
    assert "PASS  involution (2, 2)" in err and "FAIL" not in err


def test_convert(capsys):
    code, out, _ = run(capsys, "convert", "--n", "3", "--l", "2", "--from", "l", "--key", "[[1,1],[1]]", "--charge", "1,0", "--to", "n")
    assert code == 0
    assert json.loads(out) == {"side": "n", "key": [[], [], []], "charge": [2, 1, -2]}
    code, out, _ = run(capsys, "convert", "--n", "3", "--l", "2", "--from", "l", "--key", "[[1,1],[1]]", "--charge", "1,0", "--to", "charged")
    assert code == 0 and json.loads(out)["key"] == [3, 2, 2, 1, 1]


def test_jacon_and_crystal(capsys):
    code, out, _ = run(capsys, "jacon", "--n", "4", "--charge", "3,1", "--key", "[[4,2],[4,1]]", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["word"] == "f0 f2 f1 f3^(2) f0^(2) f2^(2) f1 f3"
    assert data["first_step_sets"] == {"0": [[1, 4, 2]], "1": [], "2": [[1, 4, 1]], "3": []}
    code, out, _ = run(capsys, "crystal", "--n", "3", "--charge", "0,0", "--profile", "1,1,1", "--format", "json")
    words = {json.dumps(v["key"]): v["word"] for v in json.loads(out)["vertices"]}
    assert words == {"[[], [3]]": "f2 f1 f0", "[[], [2, 1]]": "f1 f2 f0"}


def test_boson(capsys):
    code, out, _ = run(capsys, "boson", "--n", "2", "--l", "3", "--charge", "1,-1,0", "--mu", "1")
    assert code == 0
    assert FockVector.from_json_dict(json.loads(out)) == vacuum_B_product((1,), (1, -1, 0), 2)
    assert len(json.loads(out)["terms"]) == 7


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--charge", "1,0", "--size", "2", "--max-boxes", "2")
    assert code == 0
    assert "FAIL" not in out and "PASS" in out


def test_pin_conventions_dry_run(capsys):
    code, out, _ = run(capsys, "pin-conventions", "--dry-run")
    assert code == 0
    assert "l:asc/n:asc/above" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["canonical", "--n", "2", "--charge", "0,0", "--deficit", "2"],
        ["canonical", "--n", "2", "--charge", "0,x", "--deficit", "2,2"],
        ["canonical", "--n", "2", "--charge", "0,0"],
        ["canonical", "--n", "2", "--charge", "0,0", "--deficit", "2,-1"],
        ["canonical", "--n", "0", "--charge", "0,0", "--deficit", "2,2"],
        ["frobnicate"],
        ["convert", "--n", "3", "--l", "2", "--from", "l", "--key", "[[1,1]", "--charge", "1,0", "--to", "n"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_internal_failure_exits_3(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise NonLaurentResult("forced")

    monkeypatch.setattr(cli, "canonical_basis", broken)
    code, _, err = run(capsys, *DELTA0)
    assert code == 3
    line = next(x for x in err.splitlines() if x.startswith("fockcb diagnostic: "))
    payload = json.loads(line[len("fockcb diagnostic: "):])
    assert payload["error"] == "NonLaurentResult"
    assert payload["block"]["deficit"] == [2, 2]


def test_cache_and_threads_do_not_change_output(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("FOCKCB_CACHE", raising=False)
    argv = ["canonical", "--n", "2", "--charge", "0,0", "--size", "3", "--basis", "both"]
    _, cold, _ = run(capsys, *argv)
    _, first, _ = run(capsys, *argv, "--cache", str(tmp_path))
    assert list(tmp_path.glob("*.json"))
    _, warm, _ = run(capsys, *argv, "--cache", str(tmp_path))
    monkeypatch.setenv("FOCKCB_CACHE", str(tmp_path))
    _, env, _ = run(capsys, *argv)
    monkeypatch.delenv("FOCKCB_CACHE")
    _, threaded, _ = run(capsys, *argv, "--threads", "2")
    assert cold == first == warm == env == threaded


def test_report_files_are_deterministic(capsys, tmp_path):
    for name in ("a", "b"):
        code, _, _ = run(capsys, *DELTA0, "--basis", "both", "--report", str(tmp_path / name), "--output", str(tmp_path / f"{name}.json"))
        assert code == 0
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert files == ["n2_l2_s0_0_N2_2_minus.csv", "n2_l2_s0_0_N2_2_minus.png", "n2_l2_s0_0_N2_2_plus.csv", "n2_l2_s0_0_N2_2_plus.png"]
    for f in files:
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
    assert (tmp_path / "a.json").read_text() == (tmp_path / "b.json").read_text()


def test_console_script_module_entry():
    proc = subprocess.run([sys.executable, "-m", "fockcb.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "fockcb" in proc.stdout

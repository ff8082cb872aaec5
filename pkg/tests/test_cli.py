import json
import subprocess
import sys

import pytest

from hklattice.cli import main
from hklattice.scenarios import e6_listed_isometry


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info_examples(capsys):
    code, out, _ = run(capsys, "--format", "json", "info", "U(3)+<-2>")
    data = json.loads(out)
    assert code == 0 and abs(data["det"]) == 18 and data["signature"] == [1, 2]
    code, out, _ = run(capsys, "info", "E8(-1)", "--format", "json")
    assert json.loads(out)["discriminant"] == []
    code, out, _ = run(capsys, "info", "<6>")
    assert "Z/6" in out


def test_info_parse_error(capsys):
    code, _, err = run(capsys, "info", "Q9")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "info", "@/nonexistent.json")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "verify", "a9")[0] == 2
    assert run(capsys, "springer", "g2", "3")[0] == 2
    assert run(capsys, "springer", "f4", "0")[0] == 2
    assert run(capsys, "--cap", "0", "info", "U")[0] == 2
    assert run(capsys, "walls", "a2", "--squares", "x")[0] == 2


def test_orthgroup(capsys):
    code, out, _ = run(capsys, "orthgroup", "A2(-1)", "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 12
    code, out, err = run(capsys, "orthgroup", "D4(-1)", "--order-filter", "3", "--fpf", "--format", "json")
    data = json.loads(out)
    assert data["classes_in_orthogonal_group"] == 1 and data["selected"] == 16
    assert "enumerating" in err
    assert run(capsys, "orthgroup", "U")[0] == 2


def test_orthgroup_cap(capsys, monkeypatch):
    assert run(capsys, "orthgroup", "D4", "--cap", "10")[0] == 1
    monkeypatch.setenv("HKLATTICE_CAP", "10")
    assert run(capsys, "orthgroup", "A3")[0] == 1


def test_springer(capsys):
    code, out, _ = run(capsys, "springer", "f4", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["lambda"] == 2 and data["lambda_star"] == 2 and data["regular_uniqueness"]
    assert data["cross_check"]
    code, out, _ = run(capsys, "springer", "e6", "1", "--no-enumerate", "--format", "json")
    assert json.loads(out)["lambda"] == 6


def test_disc_with_isometry(capsys, tmp_path):
    p = tmp_path / "rho.json"
    p.write_text(json.dumps(e6_listed_isometry().to_json()))
    code, out, _ = run(capsys, "disc", "E6(-1)", "--isometry", str(p), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["cyclic_orders"] == [3] and data["action_trivial"]
    code, out, _ = run(capsys, "disc", "D4(-1)")
    assert "Z/2 + Z/2" in out
    assert run(capsys, "disc", "<1>")[0] == 2


def test_verify_a2_json(capsys, tmp_path):
    out_file = tmp_path / "a2.json"
    code, out, _ = run(capsys, "verify", "a2", "--format", "json", "--out", str(out_file))
    assert code == 0 and out == ""
    data = json.loads(out_file.read_text())
    assert data["overall"] == "pass"
    lift = next(c for c in data["reports"][0]["checks"] if c["name"] == "lift")
    assert "lift_exists=false" in lift["details"]
    # round trip
    assert json.loads(json.dumps(data, indent=2)) == data


def test_verify_human_has_anchors(capsys):
    code, out, _ = run(capsys, "verify", "a1")
    assert code == 0
    assert "[isometry lifting]" in out and "scenario a1: PASS" in out


def test_walls(capsys):
    code, out, _ = run(capsys, "walls", "a2", "--bound", "3", "--format", "json")
    data = json.loads(out)
    assert data["bound"] == 3
    assert data["witnesses"][0]["wall"] == [0, 1, 0, 0, 0]
    assert data["witnesses"][1]["wall"] == [0, 2, 0, 0, 1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hklattice", "info", "A2"], capture_output=True, text=True)
    assert r.returncode == 0 and "Z/3" in r.stdout

import json

import pytest

from rank2cm import cli
from rank2cm.oracle import OracleVerdict
from rank2cm.quiver import Rim, render_rim


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    made = {}
    for name, sums in {
        "zero": "0,0,0,0,0",
        "m2": "1,2,-1,-2,0",
        "m_2": "1,-2,-1,2,0",
        "m3": "1,3,-1,-3,0",
        "t135": "1,1,-2,0,0",
        "t137": "1,1,0,-2,0",
        "gap": "1,-1,0,0,0",
    }.items():
        code, out, _ = run(capsys, "make", "--sums", sums)
        assert code == 0
        path = tmp_path / f"{name}.json"
        path.write_text(out)
        made[name] = str(path)
    return made


def test_make_format(files):
    data = json.loads(open(files["m2"]).read())
    assert data["prec"] == 8
    assert data["b"][2] == ["2", "0", "0", "0", "0", "0", "0", "0"]


def test_validate(capsys, files):
    code, out, _ = run(capsys, "validate", files["m2"])
    assert code == 0 and "ok" in out


def test_classify_zero(capsys, files):
    code, out, _ = run(capsys, "classify", files["zero"], "--json")
    data = json.loads(out)
    assert code == 0
    assert data["case"]["kind"] == "TrivialSum" and data["indecomposable"] is False


def test_classify_family(capsys, files):
    code, out, _ = run(capsys, "classify", files["m2"], "--json")
    data = json.loads(out)
    assert data["case"]["kind"] == "FourGeneric"
    assert data["invariant_beta_squared"] == "4"


def test_malformed_series(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    b = [["0"]] * 10
    b = b[:2] + [["1/x"]] + b[3:]
    bad.write_text(json.dumps({"prec": 4, "b": b}))
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1 and "b_3" in err


def test_nonzero_sum(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"prec": 4, "b": [["1"]] + [["0"]] * 9}))
    code, _, err = run(capsys, "classify", str(bad))
    assert code == 1 and "residual" in err


def test_low_precision(capsys, files):
    code, _, err = run(capsys, "validate", files["m2"], "--prec", "1")
    assert code == 1


def test_compare_isomorphic(capsys, files):
    code, out, _ = run(capsys, "compare", files["m2"], files["m_2"], "--json", "--oracle", "--witness")
    data = json.loads(out)
    assert code == 0
    assert data["isomorphic"] is True and data["criterion"] == "four-generic-quartic"
    assert data["oracle"]["isomorphic"] is True
    assert data["witness_verified"] is True and len(data["witness"]) == 10


def test_compare_not_isomorphic(capsys, files):
    code, out, _ = run(capsys, "compare", files["m2"], files["m3"], "--json")
    assert code == 0 and json.loads(out)["isomorphic"] is False


def test_compare_profile_mismatch(capsys, files):
    code, out, _ = run(capsys, "compare", files["t135"], files["t137"], "--json")
    data = json.loads(out)
    assert data["isomorphic"] is False and data["criterion"] == "profile-mismatch"


def test_compare_decomposable(capsys, files):
    code, out, _ = run(capsys, "compare", files["gap"], files["m2"], "--json")
    assert code == 0 and "decomposable" in json.loads(out)


def test_disagreement_exit_code(capsys, files, monkeypatch):
    monkeypatch.setattr(cli, "iso_oracle", lambda a, b, prec: OracleVerdict(False, 0, prec))
    code, out, _ = run(capsys, "compare", files["m2"], files["m_2"], "--oracle")
    assert code == 2 and "DISAGREEMENT" in out


def test_witness_roundtrip(capsys, files, tmp_path):
    w = tmp_path / "w.json"
    code, _, _ = run(capsys, "witness", files["m2"], files["m_2"], "-o", str(w))
    assert code == 0
    code, out, _ = run(capsys, "witness", files["m2"], files["m_2"], "--verify", str(w))
    assert code == 0 and "verified" in out
    data = json.loads(w.read_text())
    data[3][0][1] = ["5"] + data[3][0][1][1:]
    w.write_text(json.dumps(data))
    code, out, _ = run(capsys, "witness", files["m2"], files["m_2"], "--verify", str(w))
    assert code == 1 and "REJECTED" in out


def test_oracle_command(capsys, files):
    code, out, _ = run(capsys, "oracle", files["m2"], "--oracle-prec", "3", "--json")
    data = json.loads(out)
    assert data["isomorphic"] is True and data["hom_dimension"] <= 12


def test_families(capsys):
    code, out, _ = run(capsys, "families", "--json")
    data = json.loads(out)
    assert data["rigid_count"] == 25
    assert sum(not r["rigid"] for r in data["classes"]) == 3
    code, out, _ = run(capsys, "families")
    assert "25 rigid classes" in out


def test_interlace(capsys):
    code, out, _ = run(capsys, "interlace", "1,3,5,7,9", "[2,4,6,8,10]")
    assert out.strip() == "5-interlacing, tight"


def test_rim(capsys):
    code, out, _ = run(capsys, "rim", "1,4,5", "--n", "8")
    assert out.rstrip("\n") == render_rim(Rim([1, 4, 5], 8))
    code, _, err = run(capsys, "rim", "1,4,12", "--n", "8")
    assert code == 1


def test_deterministic(capsys, files):
    first = run(capsys, "compare", files["m2"], files["m_2"], "--witness", "--json")
    second = run(capsys, "compare", files["m2"], files["m_2"], "--witness", "--json")
    assert first == second


def test_batch(capsys, files, tmp_path):
    code, out, _ = run(capsys, "classify", "--batch", str(tmp_path), "--json", "--workers", "2")
    data = json.loads(out)
    assert code == 0
    assert [d["file"] for d in data] == sorted(d["file"] for d in data)
    assert {d["case"]["kind"] for d in data} >= {"TrivialSum", "FourGeneric", "Three", "DecomposableOther"}

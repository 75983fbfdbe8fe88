import json

import pytest

from orthologic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify(capsys, data_dir):
    code, out, _ = run(capsys, "verify", str(data_dir / "o6.lattice"))
    assert code == 0 and "6 elements" in out
    code, out, _ = run(capsys, "verify", "O8", "--json")
    assert code == 0 and json.loads(out)["covers"] == 30


def test_verify_bowtie(capsys, data_dir):
    code, _, err = run(capsys, "verify", str(data_dir / "bowtie.lattice"))
    assert code == 2 and "NotALattice" in err


def test_check_om_horn(capsys):
    code, out, _ = run(capsys, "check", "O6", "OM_horn", "--json")
    d = json.loads(out)
    assert code == 1
    assert d["witness"] == {"a": "x", "b": "y"} and d["status"] == "fail"
    assert list(d) == ["lattice", "condition", "reading", "status", "scanned", "witness", "values"]


@pytest.mark.parametrize("argv", [("check", "O6", "COMM"), ("check", "B4", "DIST_eq"),
                                  ("check", "--lattice", "B4", "--condition", "DIST_eq")])
def test_check_passes(capsys, argv):
    assert run(capsys, *argv)[0] == 0


def test_check_all_readings(capsys):
    code, out, _ = run(capsys, "check", "O7", "WOML2_id", "--reading", "all", "--json")
    rows = json.loads(out)
    assert [r["reading"] for r in rows] == ["q", "c", "horn"]
    assert [r["status"] for r in rows] == ["fail", "fail", "pass"]
    assert code == 1


def test_check_condition_file(capsys, data_dir):
    code, out, _ = run(capsys, "check", "O6", str(data_dir / "om.conditions"), "--json")
    rows = json.loads(out)
    assert [r["condition"] for r in rows] == ["om_horn", "om_eq"]
    assert code == 1


def test_check_reading_not_applicable(capsys):
    code, _, err = run(capsys, "check", "O6", "OM_horn", "--reading", "c")
    assert code == 2 and "does not apply" in err


@pytest.mark.parametrize("argv", [("check", "O9", "COMM"), ("check", "O6", "NOPE"), ("check", "O6"),
                                  ("valid", "p0 v", "B2"), ("soundness", "XL", "O6"), ("proof", "verify", "missing.drv")])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "O8", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["flags"]["OML"] is False
    assert d["witnesses"]["OML"]["witness"] == {"a": "w", "b": "y"}
    code, out, _ = run(capsys, "classify", "O6", "B2")
    assert "WDL*" in out and "B2" in out


def test_valid_and_consequence(capsys):
    assert run(capsys, "valid", "p0 v ~p0", "O6", "O8")[0] == 0
    code, out, _ = run(capsys, "valid", "p0", "B2", "--json")
    assert code == 1 and json.loads(out)["witness"] == {"p0": "0"}
    assert run(capsys, "consequence", "p1", "O6", "--hyp", "p0", "--hyp", "p0 ->3 p1")[0] == 0
    assert run(capsys, "consequence", "p1", "O6", "--hyp", "p0")[0] == 1


def test_proof_verify(capsys, data_dir):
    code, out, _ = run(capsys, "proof", "verify", str(data_dir / "a3.instance"))
    assert code == 0 and out.startswith("ok")
    code, out, _ = run(capsys, "proof", "verify", str(data_dir / "a14_chain.drv"), "--lattice", "O8", "--json")
    d = json.loads(out)
    assert code == 0 and d["semantic"][0]["status"] == "pass"


def test_proof_verify_rejects(capsys, tmp_path, data_dir):
    bad = tmp_path / "bad.drv"
    bad.write_text((data_dir / "mp_chain.drv").read_text().replace("system QL", "system CL"))
    code, _, err = run(capsys, "proof", "verify", str(bad))
    assert code == 2 and "BadMP" in err


def test_soundness(capsys):
    code, out, _ = run(capsys, "soundness", "QL", "O6", "O7", "O8")
    assert code == 0 and out.count(": pass") == 3
    code, out, _ = run(capsys, "soundness", "CL", "MO2", "--json")
    assert code == 1 and json.loads(out)["axioms"]["CL.A4"]["status"] == "fail"


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", "hexagon", "O6", "--json")
    d = json.loads(out)
    assert code == 0 and d["mapping"]["{-1,0}"] == "y"
    assert run(capsys, "iso", "O6", "B8")[0] == 1


def test_holland(capsys):
    code, out, _ = run(capsys, "holland", "O7", "--json")
    assert code == 0 and json.loads(out)["o6_subalgebra"] == ["0", "x", "y", "y'", "x'", "1"]


def test_paper_tables(capsys, data_dir):
    code, out, _ = run(capsys, "paper-tables", "--json")
    assert code == 0
    assert json.loads(out) == json.loads((data_dir / "paper_tables.json").read_text())
    code, out, _ = run(capsys, "paper-tables")
    assert "divergent cells" in out and "closure on computed rows: holds" in out


def test_json_is_byte_stable(capsys):
    first = run(capsys, "classify", "O7", "--json")[1]
    second = run(capsys, "classify", "O7", "--json", "--jobs", "3")[1]
    assert first == second

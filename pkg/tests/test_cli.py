import json

import pytest

from satrank.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def d8_file(tmp_path):
    path = tmp_path / "d8.json"
    path.write_text(json.dumps(
        {"degree": 4, "generators": [[1, 2, 3, 0], [0, 3, 2, 1]], "p": 2}))
    return str(path)


@pytest.fixture()
def h3_file(tmp_path):
    path = tmp_path / "h3.json"
    path.write_text(json.dumps({
        "p": 3, "k": 1, "dim": 3,
        "labels": ["x", "y", "z"],
        "brackets": [{"i": 0, "j": 1, "out": [{"k": 2, "c": [1]}]}],
        "pmap": [{"i": 0, "out": []}, {"i": 1, "out": []}, {"i": 2, "out": []}],
    }))
    return str(path)


def test_group_srk(capsys, d8_file):
    code, out, _ = run_cli(capsys, "group-srk", "--file", d8_file)
    assert code == 0
    rep = json.loads(out)
    assert rep["srk"] == 2 and rep["quillen_dim"] == 2
    assert len(rep["classes"]) == 2
    assert rep["equidimensional"] is True


def test_lie_srk(capsys, h3_file):
    code, out, _ = run_cli(capsys, "lie-srk", "--file", h3_file)
    assert code == 0
    rep = json.loads(out)
    assert rep["srk"] == 2 and rep["o_rmin_count"] == 26


def test_lie_nullcone(capsys, h3_file):
    code, out, _ = run_cli(capsys, "lie-nullcone", "--file", h3_file)
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] == 27 and len(rep["points"]) == 27


def test_sln_srk(capsys):
    code, out, _ = run_cli(capsys, "sln-srk", "--n", "4", "--p", "5")
    assert code == 0
    assert json.loads(out)["srk"] == 3


def test_sln_orbits(capsys):
    code, out, _ = run_cli(capsys, "sln-orbits", "--n", "3", "--p", "5")
    assert code == 0
    rep = json.loads(out)
    assert rep["srk"] == 2
    assert rep["o_rmin"] == [[3], [2, 1]]


def test_sln_centralizer(capsys):
    code, out, _ = run_cli(capsys, "sln-centralizer", "--n", "4", "--p", "5",
                           "--partition", "3,1")
    assert code == 0
    rep = json.loads(out)
    assert rep["dimension"] == 5 and rep["degenerate"] is False


def test_sln_witness(capsys):
    code, out, _ = run_cli(capsys, "sln-witness", "--n", "4", "--p", "5",
                           "--partition", "3,1")
    assert code == 0
    rep = json.loads(out)
    assert [w["dim"] for w in rep["witnesses"]] == [3] * 6


def test_frob2_srk(capsys):
    code, out, _ = run_cli(capsys, "frob2-srk", "--n", "3", "--p", "5")
    assert code == 0
    rep = json.loads(out)
    assert rep["srk_sln2"] == 4 and rep["bound_attained"] is True


def test_frob2_verify_exp(capsys):
    code, out, _ = run_cli(capsys, "frob2-verify-exp", "--n", "3", "--p", "5")
    assert code == 0
    rep = json.loads(out)
    assert rep["holds"] is True and rep["pairs_checked"] == 25


def test_oracle_crosscheck(capsys):
    code, out, _ = run_cli(capsys, "oracle-crosscheck")
    assert code == 0
    assert json.loads(out)["all_pass"] is True


def test_exit_codes(capsys, h3_file, tmp_path):
    code, _, err = run_cli(capsys, "sln-srk", "--n", "4", "--p", "4")
    assert code == 2 and "precondition" in err
    code, _, err = run_cli(capsys, "lie-srk", "--file", h3_file, "--budget", "5")
    assert code == 3 and "budget" in err
    code, _, err = run_cli(capsys, "group-srk", "--file", str(tmp_path / "missing.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "group-srk", "--file", str(bad))
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 64


def test_byte_identical_output(capsys, d8_file):
    _, out1, _ = run_cli(capsys, "group-srk", "--file", d8_file)
    _, out2, _ = run_cli(capsys, "group-srk", "--file", d8_file)
    assert out1 == out2


def test_out_flag(capsys, d8_file, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "group-srk", "--file", d8_file, "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["srk"] == 2


def test_table_format(capsys):
    code, out, _ = run_cli(capsys, "sln-srk", "--n", "4", "--p", "5", "--format", "table")
    assert code == 0
    assert "srk\t3" in out

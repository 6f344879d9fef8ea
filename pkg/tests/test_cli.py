import json

import pytest

from cycdiv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_anagram_table_json(capsys):
    code, out, _ = run(capsys, "anagram-table", "--q", "3", "--json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 10
    mixed = next(r for r in rows if r["representative"] == [0, 1, 2])
    assert mixed["level_counts"] == [0, 3, 3]
    assert mixed["f"] == -3
    assert mixed["in_C0"] is True


def test_norm_command(capsys):
    code, out, _ = run(capsys, "norm", "--element", "1;1;1")
    assert code == 0
    assert "oracle  = 1 + 5*t + t^2" in out
    assert "formula = 1 + 5*t + t^2" in out
    assert "valuation = 0" in out


def test_is_norm_negative(capsys):
    code, out, _ = run(capsys, "is-norm", "--x", "2")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] is False
    assert data["certificate"]["kind"] == "residue"


def test_is_norm_positive(capsys):
    code, out, _ = run(capsys, "is-norm", "--x", "6 + t")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] is True
    assert "preimage" in data


def test_algebra_build_and_certify(capsys):
    code, out, _ = run(capsys, "algebra", "build", "--alpha", "2")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 9 and data["basis"][1] == "u"
    code, out, _ = run(capsys, "algebra", "certify", "--alpha", "2")
    assert code == 0
    assert json.loads(out)["division"] is True
    code, out, _ = run(capsys, "algebra", "certify", "--alpha", "6")
    assert code == 0
    assert json.loads(out)["division"] is False


def test_algebra_mul(capsys):
    # (u X) * u = xi u^2 X = 2 u^2 X  over F_7((t)), xi = 2
    a = "0;0;0;0;1;0;0;0;0"
    b = "0;1;0;0;0;0;0;0;0"
    code, out, _ = run(capsys, "algebra", "mul", "--alpha", "2", "--a", a, "--b", b)
    assert code == 0
    assert out.strip() == "(2)*u^2*X"


def test_algebra_invert_zero_divisor_exit_code(capsys):
    d = "4;0;0;1;0;0;0;0;0"  # X - 3 in the alpha = 6 algebra
    code, out, _ = run(capsys, "algebra", "invert", "--alpha", "6", "--d", d)
    assert code == 1
    data = json.loads(out)
    assert data["error"] == "zero divisor"
    assert "kernel" in data


def test_algebra_constants_roundtrip(tmp_path, capsys):
    out_path = tmp_path / "constants.json"
    code, out, _ = run(capsys, "algebra", "constants", "--alpha", "2",
                       "--out", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["n"] == 9
    assert len(data["matrices"]) == 9


def test_albert_command(capsys):
    code, out, _ = run(capsys, "albert", "--trials", "20", "--seed", "1")
    assert code == 0
    data = json.loads(out)
    assert data["failures"] == 0 and data["trials"] == 20


def test_biquat_constants(tmp_path, capsys):
    out_path = tmp_path / "biquat.json"
    code, _, _ = run(capsys, "biquat", "constants", "--out", str(out_path), "--prec", "6")
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["n"] == 16
    assert data["basis"][0] == "1(x)1"


def test_verify_selected_claims(capsys, tmp_path):
    out_path = tmp_path / "reports.jsonl"
    code, out, err = run(capsys, "verify", "--trials", "10",
                         "--claims", "norm-closed-forms", "norm-valuation-identity",
                         "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 2
    for line in lines:
        report = json.loads(line)
        assert report["passed"] is True
        assert "elapsed" not in report
    assert "PASS" in err


def test_verify_determinism(capsys):
    args = ["verify", "--trials", "5", "--claims", "norm-residues"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"trials": 7, "seed": 3}))
    code, out, _ = run(capsys, "verify", "--config", str(cfg),
                       "--claims", "norm-closed-forms")
    assert code == 0
    assert json.loads(out.splitlines()[0])["seed"] == 3
    # flags beat the config file
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--seed", "5",
                       "--claims", "norm-closed-forms")
    assert json.loads(out.splitlines()[0])["seed"] == 5


def test_verify_invalid_config_exit_2(capsys):
    code, _, err = run(capsys, "verify", "--p", "6")
    assert code == 2
    assert "error" in err


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("CDA_PRECISION", "8")
    code, out, _ = run(capsys, "is-norm", "--x", "6")
    assert code == 0
    assert "O(t^8)" in json.loads(out)["preimage"]
    monkeypatch.setenv("CDA_PRECISION", "notanint")
    code, _, err = run(capsys, "is-norm", "--x", "6")
    assert code == 2
    assert "CDA_PRECISION" in err


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc_info:
        main(["not-a-command"])
    assert exc_info.value.code == 2


def test_rationals_mode(capsys):
    code, out, _ = run(capsys, "algebra", "invert", "--rationals", "--q", "2",
                       "--alpha", "-1", "--d", "1;1;1;1")
    assert code == 0
    assert out.strip() == "1/4 + -1/4*u + -1/4*X + -1/4*u*X"


def test_hahn_mode(capsys):
    code, out, _ = run(capsys, "algebra", "certify", "--hahn", "7", "--alpha", "x",
                       "--prec", "6")
    assert code == 0
    assert json.loads(out)["division"] is True

import json

import pytest

from qdef.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_symbol(capsys):
    assert run(capsys, "symbol", "-1", "-1", "2")[:2] == (0, "-1\n")
    assert run(capsys, "symbol", "-1", "-1", "inf")[1] == "-1\n"
    assert run(capsys, "symbol", "1", "7", "5")[1] == "1\n"


def test_delta(capsys):
    code, out, _ = run(capsys, "delta", "-1/2", "3")
    assert code == 0 and out == "finite: 2,3\nreal: split\n"


def test_bad_input_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["symbol", "1", "2", "4"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "define-semilocal", "4,5")
    assert code == 2 and "not prime" in err
    code, _, err = run(capsys, "run", "no-such-suite")
    assert code == 2


def test_define_emit_verify(tmp_path, capsys):
    cert = tmp_path / "s.json"
    code, out, _ = run(capsys, "define-semilocal", "3,7", "--out", str(cert))
    assert code == 0 and "∃y1 ∃y2 ∃y3" in out
    assert json.loads(cert.read_text())["kind"] == "semilocal"
    code, out, _ = run(capsys, "emit-formula", str(cert), "--sexpr")
    assert code == 0 and out.startswith("(∃ y1")
    code, out, err = run(capsys, "--seed", "4", "verify-semilocal", str(cert), "--count", "60", "--height", "60")
    assert code == 0 and "seed: 4" in out and "status: pass" in out
    assert err.startswith("[verify-semilocal]")


def test_tampered_certificate(tmp_path, capsys):
    cert = tmp_path / "s.json"
    run(capsys, "define-semilocal", "2", "--out", str(cert))
    cert.write_text(cert.read_text().replace('"pi": "', '"pi": "9', 1))
    code, _, err = run(capsys, "emit-formula", str(cert))
    assert code == 2 and "digest" in err


def test_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("QDEF_SEED", "17")
    code, out, _ = run(capsys, "run", "valuation", "--count", "20", "--height", "20")
    assert code == 0 and "seed: 17" in out


def test_tabular(capsys):
    code, out, _ = run(capsys, "run", "units", "--count", "20", "--height", "20", "--format", "tabular")
    assert code == 0 and out.splitlines()[0] == "check,passed,failed"


def test_ledger(capsys):
    code, out, _ = run(capsys, "ledger", "2,3")
    assert code == 0 and out.splitlines()[0] == "{paper: 10, naive: 12, merge_constructed: false}"


def test_poonen(capsys):
    code, out, _ = run(capsys, "poonen", "-1/2", "3", "1/5")
    assert code == 0 and out.startswith("1/5 = ")
    assert run(capsys, "poonen", "-1/2", "3", "1/2")[0] == 2


def test_universal(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "universal", "2", "--count", "50", "--height", "50")
    assert code == 0 and "status: pass" in out
    assert (tmp_path / "universal_2.json").exists()
    code, out, _ = run(capsys, "emit-formula", "universal_2.json")
    assert code == 0 and out.startswith("∀")

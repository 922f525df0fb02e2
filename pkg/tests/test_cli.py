import json

import pytest

from congwit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_witness_s16_success(capsys):
    code, out, _ = run_cli(capsys, "witness", "s16", "--p", "7", "--samples", "50")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == "1"
    assert doc["config"] == {"command": "witness", "method": "s16", "p": 7, "samples": 50, "seed": 0}
    assert doc["iso_report"]["verdict"] == "witnessed"
    assert doc["iso_report"]["exhaustive"] is True
    assert doc["obstruction_holds"] is True
    assert doc["bundle"]["orders"] == {"quotient1": 2, "quotient2": 2}


def test_witness_method_a_success(capsys):
    code, out, _ = run_cli(
        capsys, "witness", "method-a", "--samples", "60", "--seed", "0"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["iso_report"]["verdict"] == "witnessed"
    assert doc["bundle"]["orders"]["quotient1"] == 2 * 5**15 * 7**15


def test_witness_method_b_rejects_equal_primes(capsys):
    code, out, err = run_cli(capsys, "witness", "method-b", "--p", "5", "--q", "5")
    assert code == 2
    assert out == ""
    assert "distinct" in err


def test_witness_method_c_reports_splitting_evidence(capsys):
    code, _, err = run_cli(capsys, "witness", "method-c", "--d", "2", "--p", "5", "--q", "7")
    assert code == 2
    assert "inert" in err and "x^2 = 2 mod 5" in err


def test_search_primes(capsys):
    code, out, _ = run_cli(capsys, "search-primes", "--d", "2", "--count", "3")
    assert code == 0
    assert json.loads(out)["primes"] == [7, 17, 23]


def test_search_primes_full_center(capsys):
    code, out, _ = run_cli(capsys, "search-primes", "--full-center", "4", "--count", "2")
    assert code == 0
    assert json.loads(out)["primes"] == [5, 13]


def test_search_primes_rejects_zero_count(capsys):
    code, _, err = run_cli(capsys, "search-primes", "--d", "2", "--count", "0")
    assert code == 2
    assert "count" in err


def test_search_primes_needs_some_constraint(capsys):
    code, _, err = run_cli(capsys, "search-primes", "--count", "1")
    assert code == 2


def test_unknown_flags_are_rejected():
    with pytest.raises(SystemExit) as excinfo:
        main(["witness", "s16", "--frobnicate", "1"])
    assert excinfo.value.code == 2


def test_verify_and_obstruct_round_trip(tmp_path, capsys):
    path = tmp_path / "bundle.json"
    code, _, _ = run_cli(
        capsys, "witness", "method-c", "--samples", "40", "--output", str(path)
    )
    assert code == 0
    code, out, _ = run_cli(capsys, "verify-iso", str(path), "--samples", "30", "--seed", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "iso_verification"
    assert doc["iso_report"]["verdict"] == "witnessed"
    code, out, _ = run_cli(capsys, "obstruct", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "obstruction_recompute"
    assert doc["obstruction"]["holds"] is True


def test_verify_iso_missing_file(capsys):
    code, _, err = run_cli(capsys, "verify-iso", "/nonexistent/bundle.json")
    assert code == 2
    assert "cannot read" in err


def test_verify_iso_accepts_bare_bundle_document(tmp_path, capsys):
    path = tmp_path / "full.json"
    assert main(["witness", "s16", "--output", str(path)]) == 0
    bare = tmp_path / "bare.json"
    bare.write_text(json.dumps(json.loads(path.read_text())["bundle"]))
    code, out, _ = run_cli(capsys, "verify-iso", str(bare), "--samples", "10")
    assert code == 0
    assert json.loads(out)["iso_report"]["verdict"] == "witnessed"


def test_obstruct_refutes_tampered_bundle(tmp_path, capsys):
    path = tmp_path / "bundle.json"
    assert main(["witness", "s16", "--output", str(path)]) == 0
    doc = json.loads(path.read_text())
    # identity separates nothing: the recomputed certificate must not hold
    for mat in doc["bundle"]["separating_element"].values():
        mat["rows"] = [[1, 0], [0, 1]]
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "obstruct", str(tampered))
    assert code == 1
    assert json.loads(out)["obstruction"]["holds"] is False


def test_output_determinism(tmp_path, capsys):
    args = ["witness", "method-a", "--samples", "40", "--seed", "9"]
    first = tmp_path / "one.json"
    second = tmp_path / "two.json"
    assert main(args + ["--output", str(first)]) == 0
    assert main(args + ["--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_selftest_fault_injection_names_the_check(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--samples", "20", "--inject-fault", "w0-sign")
    assert code == 1
    assert "FAIL graph-automorphism-determinant" in out
    code, out, _ = run_cli(
        capsys, "selftest", "--samples", "20", "--inject-fault", "place-swap-a"
    )
    assert code == 1
    assert "FAIL preset-method-a" in out
    assert "membership failures" in out

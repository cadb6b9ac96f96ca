import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from mubkit.cli import main
from mubkit.io import matrix_from_json, matrix_to_json

FIXTURES = Path(__file__).parent / "fixtures"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("entry", json.loads((FIXTURES / "manifest.json").read_text()), ids=lambda e: e["file"])
def test_fixture_manifest(entry, capsys):
    code, out, _ = run(entry["argv"], capsys)
    assert code == 0
    assert out == (FIXTURES / entry["file"]).read_text()


def test_generate_json_is_deterministic(capsys):
    _, first, _ = run(["generate", "--p", "2", "--n", "2"], capsys)
    _, second, _ = run(["generate", "--p", "2", "--n", "2"], capsys)
    assert first == second
    data = json.loads(first)
    assert data["schema_version"] == "1.0"
    assert data["poly"] == [1, 1, 1]
    assert [c["label"] for c in data["classes"]] == ["00", "10", "01", "11", "inf"]
    assert len(data["projections"]) == 5
    assert "projections" in data["projections"][0]


def test_generate_without_matrices(capsys):
    _, out, _ = run(["generate", "--p", "3", "--no-matrices"], capsys)
    entry = json.loads(out)["projections"][0]
    assert "projections" not in entry and "basis" in entry


@pytest.mark.parametrize("argv,message", [
    (["generate", "--p", "4"], "4 is not prime"),
    (["generate", "--p", "2", "--n", "13"], "exceeds"),
    (["verify", "--p", "3", "--tol", "0"], "--tol"),
    (["generate", "--p", "3", "--n", "2", "--poly", "1,0,2"], "monic"),
    (["generate", "--p", "2", "--n", "2", "--poly", "1,0,1"], "reducible"),
    (["generate", "--p", "5", "--n", "3", "--D", "2"], "n = 2"),
    (["generate"], "--p is required"),
])
def test_configuration_errors_exit_2(argv, message, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert message in err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--format", "xml"])
    assert exc.value.code == 2


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)])
def test_verify_passes(p, n, capsys):
    code, out, _ = run(["verify", "--p", str(p), "--n", str(n)], capsys)
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert report["mub"]["cross_max"] < 1e-9


def test_verify_round_trips_a_dump(tmp_path, capsys):
    dump = tmp_path / "d4.json"
    assert main(["generate", "--p", "2", "--n", "2", "--out", str(dump)]) == 0
    code, out, _ = run(["verify", "--in", str(dump)], capsys)
    assert code == 0 and json.loads(out)["passed"]


def test_verify_detects_corrupted_dump(tmp_path, capsys):
    dump = tmp_path / "d4.json"
    main(["generate", "--p", "2", "--n", "2", "--out", str(dump)])
    data = json.loads(dump.read_text())
    # swap a member between two classes
    data["classes"][0]["members"][1], data["classes"][1]["members"][1] = (
        data["classes"][1]["members"][1],
        data["classes"][0]["members"][1],
    )
    dump.write_text(json.dumps(data))
    code, out, _ = run(["verify", "--in", str(dump)], capsys)
    assert code == 1
    assert not json.loads(out)["passed"]


def test_verify_detects_corrupted_basis(tmp_path, capsys):
    dump = tmp_path / "d3.json"
    main(["generate", "--p", "3", "--out", str(dump)])
    data = json.loads(dump.read_text())
    basis = matrix_from_json(data["projections"][1]["basis"])
    basis[0] = basis[0] * np.exp(0.3j) + 0.1
    data["projections"][1]["basis"] = matrix_to_json(basis)
    dump.write_text(json.dumps(data))
    code, _, _ = run(["verify", "--in", str(dump)], capsys)
    assert code == 1


def test_verify_unreadable_dump_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["verify", "--in", str(bad)], capsys)
    assert code == 2
    code, _, _ = run(["verify", "--in", str(tmp_path / "missing.json")], capsys)
    assert code == 2


def test_separability_json(capsys):
    code, out, _ = run(["separability", "--p", "2", "--n", "3"], capsys)
    data = json.loads(out)
    assert code == 0
    by_label = {c["label"]: c for c in data["classes"]}
    assert by_label["100"]["notation"] == "(1)(23)"
    assert by_label["100"]["partition"] == [[1], [2, 3]]
    assert all(c["factorization_verified"] for c in data["classes"])


def test_tomo_random_state(capsys):
    code, out, _ = run(["tomo", "--p", "3", "--n", "2", "--seed", "4", "--shots", "1000"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["route"] == "general"
    assert data["exact"]["frobenius_error"] < 1e-9
    assert data["sampled"]["record"]["shots"] == 1000
    assert data["sampled"]["frobenius_error"] > data["exact"]["frobenius_error"]


def test_tomo_maximally_mixed_input(tmp_path, capsys):
    rho = tmp_path / "rho.json"
    rho.write_text(json.dumps(matrix_to_json(np.eye(2) / 2)))
    code, out, _ = run(["tomo", "--p", "2", "--rho", str(rho)], capsys)
    data = json.loads(out)
    assert code == 0 and data["route"] == "prime"
    for pr in data["exact"]["record"]["probs"].values():
        assert pr == pytest.approx([0.5, 0.5], abs=1e-12)


def test_tomo_rejects_invalid_state(tmp_path, capsys):
    rho = tmp_path / "rho.json"
    rho.write_text(json.dumps(matrix_to_json(np.eye(2))))
    code, _, err = run(["tomo", "--p", "2", "--rho", str(rho)], capsys)
    assert code == 2 and "trace" in err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mubkit.cli", "generate", "--p", "2", "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "0,,inf"

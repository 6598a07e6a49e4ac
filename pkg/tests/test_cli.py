import json
import random
import subprocess
import sys

import pytest

from subsetcert.cli import main


@pytest.fixture
def ex1(tmp_path):
    path = tmp_path / "ex1.json"
    path.write_text(json.dumps({"weights": [1, 2, 3, 4], "t": 17}))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_then_verify(capsys, ex1, tmp_path):
    code, out, _ = run(capsys, "prove", ex1)
    assert code == 0 and json.loads(out)["p"] == 17
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    code, out, _ = run(capsys, "verify", ex1, cert, "--q-mode", "smallest")
    verdict = json.loads(out)
    assert code == 0 and verdict["outcome"] == "accept" and verdict["c_t"] == "0"
    assert verdict["params"]["q"] == "277"


def test_verify_reject_exit_code(capsys, ex1, tmp_path):
    _, out, _ = run(capsys, "prove", ex1)
    data = json.loads(out)
    data["entries"][1]["c"] = "1"
    cert = tmp_path / "bad.json"
    cert.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", ex1, cert, "--r", 7)
    assert code == 1 and json.loads(out)["lhs"] == "90"


def test_verify_with_params_file(capsys, ex1, tmp_path):
    _, out, _ = run(capsys, "prove", ex1)
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    params = tmp_path / "params.json"
    params.write_text(json.dumps({"q": "277", "r": "7", "q_mode": "smallest", "seed": 0}))
    code, out, _ = run(capsys, "verify", ex1, cert, "--params", params)
    assert code == 0 and json.loads(out)["lhs"] == "1"


def test_malformed_certificate_exit_2(capsys, ex1, tmp_path):
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps({"p": 17, "t": 17, "entries": [{"i": 17, "c": "0"}]}))
    code, out, err = run(capsys, "verify", ex1, cert)
    assert code == 2 and out == "" and len(err.strip().splitlines()) == 1


def test_oracle_matches_count(capsys, ex1):
    _, a, _ = run(capsys, "oracle", ex1)
    _, b, _ = run(capsys, "count", ex1)
    assert json.loads(a) == json.loads(b)
    _, c, _ = run(capsys, "count", ex1, "--policy", "aswritten")
    assert json.loads(c)["counts"][0] == "0"


@pytest.mark.parametrize("argv", [["frobnicate"], ["count", "/nonexistent.json"],
                                  ["prove", "--policy", "lenient", "x.json"],
                                  ["primes", "q", "--n", "4", "--t", "17", "--mode", "random"],
                                  ["audit", "equivalence", "--trials", "0"]])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert len(err.strip().splitlines()) == 1 and err.startswith("subsetcert: error:")


def test_schema_violation_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"weights": [1, -2], "t": 3}')
    assert run(capsys, "count", bad)[0] == 2
    bad.write_text("{not json")
    assert run(capsys, "count", bad)[0] == 2


def test_primes(capsys):
    assert run(capsys, "primes", "p", "--n", 4, "--t", 17)[1].strip() == "17"
    assert run(capsys, "primes", "q", "--n", 4, "--t", 17)[1].strip() == "277"
    code, out, _ = run(capsys, "primes", "q", "--n", 4, "--t", 17, "--mode", "random",
                       "--seed", 3, "--json")
    data = json.loads(out)
    assert code == 0 and 272 < int(data["prime"]) < 544 and data["seed"] == 3


def test_audit_commands(capsys):
    code, out, _ = run(capsys, "audit", "example1")
    assert code == 0 and any(ln.startswith("D1 |") for ln in out.splitlines())
    code, out, _ = run(capsys, "audit", "example1", "--json")
    assert {d["id"] for d in json.loads(out)["discrepancies"]} >= {"D1", "D2", "D3", "D4"}
    code, out, _ = run(capsys, "audit", "equivalence", "--trials", 20, "--seed", 1, "--json")
    assert code == 0 and json.loads(out)["matches"] == 20


def test_bench_command(capsys):
    code, out, _ = run(capsys, "bench", "--n", 5, "--t", 40, "--json", "--repeat", 1)
    data = json.loads(out)
    assert code == 0
    assert data["prover_cells"] == 5 * 200 and data["verifier_cells"] == 5 * data["p"]
    assert data["prover_to_verifier_cell_ratio"] == str(__import__("fractions").Fraction(200, data["p"]))


def test_round_trip_many_instances(capsys, tmp_path):
    rng = random.Random(4)
    for k in range(15):
        t = rng.randint(1, 30)
        inst = tmp_path / f"i{k}.json"
        inst.write_text(json.dumps({"weights": [rng.randint(1, t) for _ in range(rng.randint(1, 10))],
                                    "t": t}))
        for policy in ("corrected", "aswritten"):
            _, out, _ = run(capsys, "prove", inst, "--policy", policy)
            cert = tmp_path / "c.json"
            cert.write_text(out)
            assert run(capsys, "verify", inst, cert, "--policy", policy, "--seed", k)[0] == 0


def test_stdin_and_module_entry(ex1):
    proc = subprocess.run([sys.executable, "-m", "subsetcert", "prove", "-"],
                          input=ex1.read_text(), capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["p"] == 17

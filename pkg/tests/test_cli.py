import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import random_toeplitz
from toeplitz_sne import build_hankel, jsonio, matvec
from toeplitz_sne.cli import main


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def identity_files(tmp_path):
    A = write(tmp_path / "A.json", {"kind": "toeplitz", "col": [1, 0, 0], "row": [1, 0, 0]})
    b = write(tmp_path / "b.json", [1.0, 2.0, 3.0])
    return A, b


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_identity(identity_files, capsys):
    A, b = identity_files
    code, out, _ = run(["solve", "--input", A, "--rhs", b], capsys)
    assert code == 0
    assert json.loads(out)["x"] == [1.0, 2.0, 3.0]


@pytest.mark.parametrize("storage", ["dense", "rotreverse", "checkpoint"])
def test_solve_storage_and_metrics(tmp_path, capsys, rng, storage):
    T = random_toeplitz(rng, 20)
    x = rng.standard_normal(20)
    A = write(tmp_path / "A.json", jsonio.matrix_to_dict(T))
    b = write(tmp_path / "b.json", {"b": list(matvec(T, x))})
    t = write(tmp_path / "x.json", list(x))
    code, out, _ = run(["solve", "--input", A, "--rhs", b, "--storage", storage,
                        "--refine", "1", "--metrics", "--truth", t, "--check"], capsys)
    assert code == 0
    rep = json.loads(out)
    np.testing.assert_allclose(rep["x"], x, rtol=1e-8)
    assert rep["cond1"] >= 1 and rep["metrics"]["e2"] <= 10 and rep["metrics"]["e3"] <= 10
    assert len(rep["history"]) == 2


def test_lsq_and_solve_rejects_rectangular(tmp_path, capsys, rng):
    T = random_toeplitz(rng, 9, 4)
    A = write(tmp_path / "A.json", jsonio.matrix_to_dict(T))
    b = write(tmp_path / "b.json", list(rng.standard_normal(9)))
    assert run(["lsq", "--input", A, "--rhs", b], capsys)[0] == 0
    code, _, err = run(["solve", "--input", A, "--rhs", b], capsys)
    assert code == 1 and "lsq" in err


def test_factor_tally_bound(tmp_path, capsys, rng):
    n = 200
    A = write(tmp_path / "A.json", jsonio.matrix_to_dict(random_toeplitz(rng, n)))
    out_path = tmp_path / "R.json"
    code, _, err = run(["factor", "--input", A, "--tally", "--out", str(out_path), "--check"],
                       capsys)
    assert code == 0
    tally = int(err.split()[-1])
    assert tally <= 7 * n * n + 200 * n
    payload = json.loads(out_path.read_text())
    assert payload["tally"] == tally and payload["n"] == n
    assert len(payload["rows"][0]) == n and len(payload["rows"][-1]) == 1


def test_factor_log(identity_files, capsys):
    code, out, _ = run(["factor", "--input", identity_files[0], "--log"], capsys)
    log = json.loads(out)["log"]
    assert code == 0 and len(log["rotations"]) == 6 and log["order"] == ["y", "u", "zbar"]


def test_factor_breakdown_exit_2(tmp_path, capsys):
    A = write(tmp_path / "A.json", {"col": [1] * 6, "row": [1] * 6})
    code, out, err = run(["factor", "--input", A], capsys)
    assert code == 2 and out == "" and "breakdown" in err
    code, _, _ = run(["factor", "--input", A, "--alpha", "1"], capsys)
    assert code == 0


def test_hankel_flag(tmp_path, capsys, rng):
    col, row = rng.standard_normal(12), rng.standard_normal(12)
    row[0] = col[-1]
    H = build_hankel(col, row)
    x = rng.standard_normal(12)
    d = jsonio.matrix_to_dict(H)
    d.pop("kind")
    A = write(tmp_path / "H.json", d)
    b = write(tmp_path / "b.json", list(H.dense() @ x))
    code, out, _ = run(["solve", "--input", A, "--rhs", b, "--hankel"], capsys)
    assert code == 0
    np.testing.assert_allclose(json.loads(out)["x"], x, rtol=1e-8)
    code, out, _ = run(["factor", "--input", A, "--hankel"], capsys)
    R = jsonio.rfactor_rows_from_dict(json.loads(out))
    G = H.dense().T @ H.dense()
    np.testing.assert_allclose(R.T @ R, G, atol=1e-12 * np.abs(G).max())


def test_usage_errors(tmp_path, identity_files, capsys):
    A, b = identity_files
    assert run([], capsys)[0] == 1
    assert run(["frobnicate"], capsys)[0] == 1
    assert run(["solve", "--input", A], capsys)[0] == 1
    assert run(["solve", "--input", A, "--rhs", b, "--storage", "tape"], capsys)[0] == 1
    assert run(["factor", "--input", str(tmp_path / "missing.json")], capsys)[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["factor", "--input", str(bad)], capsys)[0] == 1
    mismatch = write(tmp_path / "m.json", {"col": [1, 2], "row": [3, 4]})
    assert run(["factor", "--input", mismatch], capsys)[0] == 1
    short = write(tmp_path / "short.json", [1.0])
    assert run(["solve", "--input", A, "--rhs", short], capsys)[0] == 1


def test_bench_csv_byte_identical(tmp_path, capsys):
    argv = ["bench", "--n", "8,12", "--mu-sigma", "0,10", "--count", "2", "--seed", "5"]
    code1, out1, _ = run(argv, capsys)
    code2, out2, _ = run(argv + ["--workers", "2"], capsys)
    assert code1 == code2 == 0 and out1 == out2
    lines = out1.splitlines()
    assert lines[0].startswith("n,mu_sigma,seed,cond1,e1,e2,e3,e3c,tally,status")
    assert len(lines) == 1 + 2 * 2 * 2 + 2 * 2


def test_bench_seed_zero_and_config(tmp_path, capsys):
    cfg = write(tmp_path / "c.json", {"n": [6], "mu-sigma": [1], "count": 1, "seed": 3,
                                      "format": "json", "no_family": True})
    code, out, _ = run(["bench", "--config", cfg], capsys)
    data = json.loads(out)
    assert code == 0 and [r["seed"] for r in data["rows"]] == [3]
    assert data["cells"][0]["n"] == 6
    code, out, _ = run(["bench", "--config", cfg, "--seed", "0"], capsys)
    assert [r["seed"] for r in json.loads(out)["rows"]] == [0]


def test_bench_empty_grid(tmp_path, capsys):
    out_path = tmp_path / "t.csv"
    code, _, _ = run(["bench", "--n", "", "--out", str(out_path)], capsys)
    assert code == 0
    assert out_path.read_text().count("\n") == 1


def test_module_entry_point(identity_files):
    A, b = identity_files
    proc = subprocess.run([sys.executable, "-m", "toeplitz_sne", "solve", "--input", A,
                           "--rhs", b], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["x"] == [1.0, 2.0, 3.0]

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from blockfunc.cli import EXIT_BRANCH_CUT, EXIT_CONFIG, EXIT_PRECONDITION, EXIT_SINGULAR, main
from blockfunc.io import quadrature_to_json, save_matrix
from blockfunc.matfunc import CircleContour, QuadratureScheme, exp_function, quadrature_from_circle
from blockfunc.suites import SUITES

REPORT_KEYS = {
    "tau", "eta", "eps_M", "delta_L", "degree_d", "alpha_prime", "beta_prime",
    "measured_error_vs_fM", "measured_error_vs_f", "pass",
}


@pytest.fixture
def workdir(tmp_path):
    save_matrix(tmp_path / "a.json", np.diag([0.1, 0.2]))
    return tmp_path


def write_config(workdir, name="cfg.json", **body):
    body.setdefault("matrix", "a.json")
    body.setdefault("function", "exp")
    body.setdefault("delta", 1e-3)
    path = workdir / name
    path.write_text(json.dumps(body))
    return str(path)


CIRCLE = {"z0": [0, 0], "r": 1, "R": 2, "M": 4, "L": 16}


def test_verify_report(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--seed", "3", "--trials", "2", "--out", str(out), "--single-thread"]) == 0
    report = json.loads(out.read_text())
    assert [r["suite"] for r in report] == list(SUITES)
    for row in report:
        assert set(row) == {"suite", "trials", "max_measured_over_claimed", "pass"}
        assert row["pass"] and row["trials"] == 2


def test_verify_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        main(["verify", "--seed", "42", "--trials", "3", "--out", str(out), "--single-thread"])
    assert a.read_bytes() == b.read_bytes()


def test_verify_cap_is_config_error():
    assert main(["verify", "--max-qubits", "40"]) == EXIT_CONFIG


def test_matfunc_contour_report(workdir):
    cfg = write_config(workdir, contour=CIRCLE)
    out = workdir / "r.json"
    assert main(["matfunc", "--config", cfg, "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert REPORT_KEYS <= set(rep)
    assert rep["measured_error_vs_fM"] <= rep["eta"]
    assert rep["measured_error_vs_f"] <= rep["eta"] + rep["eps_M"]


def test_matfunc_quadrature_mode_matches_contour(workdir):
    c = CircleContour(0, 1, 2, 4, 16)
    q = quadrature_from_circle(exp_function(), c)
    (workdir / "q.json").write_text(json.dumps(quadrature_to_json(q)))
    r1, r2 = workdir / "r1.json", workdir / "r2.json"
    assert main(["matfunc", "--config", write_config(workdir, "c.json", contour=CIRCLE), "--out", str(r1)]) == 0
    assert main(["matfunc", "--config", write_config(workdir, "q.json.cfg", quadrature="q.json"), "--out", str(r2)]) == 0
    a = np.array(json.loads(r1.read_text())["approximant"])
    b = np.array(json.loads(r2.read_text())["approximant"])
    assert np.max(np.abs(a - b)) <= 1e-9
    assert json.loads(r2.read_text())["pass"]


def test_matfunc_sweep_csv(workdir):
    cfg = write_config(workdir, contour=CIRCLE)
    out = workdir / "r.json"
    assert main(["matfunc", "--config", cfg, "--out", str(out), "--sweep", "4,8,16"]) == 0
    with open(workdir / "r_sweep.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["M"]) for r in rows] == [4, 8, 16]
    for r in rows:
        assert float(r["error"]) <= float(r["eps_M"])


def test_matfunc_is_byte_identical(workdir):
    cfg = write_config(workdir, contour=CIRCLE)
    outs = [workdir / "x.json", workdir / "y.json"]
    for out in outs:
        main(["matfunc", "--config", cfg, "--out", str(out), "--single-thread", "--seed", "7"])
    assert outs[0].read_bytes() == outs[1].read_bytes()


def test_matfunc_error_codes(workdir, capsys):
    log_cfg = write_config(workdir, "log.json", function="log", contour=CIRCLE)
    assert main(["matfunc", "--config", log_cfg]) == EXIT_BRANCH_CUT
    assert "branch cut" in capsys.readouterr().err

    save_matrix(workdir / "big.json", np.diag([0.1, 1.5]))
    big = write_config(workdir, "big_cfg.json", matrix="big.json", contour=CIRCLE)
    assert main(["matfunc", "--config", big]) == EXIT_PRECONDITION
    assert "SpectrumEnclosureError" in capsys.readouterr().err

    save_matrix(workdir / "z.json", np.diag([1.0, -1.0]))
    quad = {"r": 1, "nodes": [{"w": [0.5, 0], "y": [1, 0], "z": [1, 0]}, {"w": [0.5, 0], "y": [2, 0], "z": [1, 0]}]}
    sing = write_config(workdir, "sing.json", matrix="z.json", quadrature=quad)
    assert main(["matfunc", "--config", sing]) == EXIT_SINGULAR

    assert main(["matfunc", "--config", str(workdir / "missing.json")]) == EXIT_CONFIG


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "blockfunc.cli", "verify", "--trials", "1", "--max-qubits", "99"],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_CONFIG
    assert "max-qubits" in proc.stderr

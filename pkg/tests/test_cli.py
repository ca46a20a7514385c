from __future__ import annotations

import json
import subprocess
import sys

import pytest

from hcizlab.cli import main


@pytest.fixture(autouse=True)
def _in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("HCIZLAB_THREADS", raising=False)
    monkeypatch.delenv("HCIZLAB_PRECISION", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hurwitz_d2(capsys):
    code, out, _ = run(capsys, "hurwitz", "--d", "2", "--g", "0")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 4 and all(r["value"] == "1" for r in rows)


def test_hurwitz_closed_form(capsys):
    code, out, _ = run(capsys, "hurwitz", "--d", "3", "--g", "0", "--beta", "1,1,1", "--method", "closed_form")
    rows = {r["alpha"]: r["value"] for r in json.loads(out)["rows"]}
    assert code == 0 and rows["3"] == "4"


def test_hurwitz_genus_one_degree_one(capsys):
    code, out, _ = run(capsys, "hurwitz", "--d", "1", "--g", "1")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 1 and rows[0]["value"] == "0"


def test_weingarten_json(capsys):
    code, out, _ = run(capsys, "weingarten", "--d", "2", "--N", "5", "--format", "json")
    entries = {tuple(e["class"]): (e["numerator"], e["denominator"]) for e in json.loads(out)["entries"]}
    assert code == 0
    assert {k: (int(n), int(d)) for k, (n, d) in entries.items()} == {(1, 1): (1, 24), (2,): (-1, 120)}


def test_hciz_eval_and_manifest(capsys, tmp_path):
    code, out, _ = run(capsys, "hciz", "--eval", "--z", "0.1", "--spectra", "uniform:8")
    data = json.loads(out)
    assert code == 0 and data["I"]["re"] > 0 and data["I"]["im"] == 0
    man = json.loads((tmp_path / "hcizlab-manifest.json").read_text())
    assert man["command"] == "hciz" and man["precision"] == 50 and man["seed"] == 0


def test_zeros_predict(capsys):
    code, out, _ = run(capsys, "zeros", "--predict", "--N", "2", "--hbar", "1", "--b", "0,1")
    rows = json.loads(out)["rows"]
    assert code == 0
    assert sorted(round(r["im_z_over_pi"], 12) for r in rows) == [-3, -2, -1, 1, 2, 3]


def test_out_file_and_sidecar(capsys, tmp_path):
    code, out, _ = run(capsys, "genfun", "--series", "s", "--n-max", "4", "--out", "s.json")
    assert code == 0 and out == ""
    coeffs = json.loads((tmp_path / "s.json").read_text())["coefficients"]
    assert [int(n) for n, _ in coeffs] == [0, 1, 4, 28, 240]
    assert json.loads((tmp_path / "s.json.manifest.json").read_text())["outputs"] == ["s.json"]


def test_capacity_error(capsys):
    code, _, err = run(capsys, "hurwitz", "--d", "13")
    assert code == 3
    assert set(json.loads(err)) == {"code", "module", "message"}


def test_usage_errors(capsys):
    code, _, err = run(capsys, "hurwitz")
    assert code == 2 and json.loads(err)["module"] == "cli"
    code, _, err = run(capsys, "zeros", "--predict", "--b", "1,0")
    assert code == 2 and json.loads(err)["module"] == "zeros"
    code, _, err = run(capsys, "weingarten", "--d", "2", "--N", "0")
    assert code == 2


def test_env_precision(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("HCIZLAB_PRECISION", "30")
    monkeypatch.setenv("HCIZLAB_THREADS", "2")
    run(capsys, "zeros", "--cauchy", "4,8")
    man = json.loads((tmp_path / "hcizlab-manifest.json").read_text())
    assert man["precision"] == 30 and man["threads"] == 2


def test_exact_outputs_are_byte_identical(capsys):
    args = ("hciz", "--derivs", "4", "--a", "1/2,-1,2", "--b", "0,1/3,1")
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]
    assert json.loads(first)["derivatives"][0] == "-2"  # -Tr A Tr B = -(3/2)(4/3)


def test_monte_carlo_byte_identical(capsys):
    args = ("weingarten", "--d", "2", "--N", "3", "--correlation", "1,1;1,1;1,1;1,1", "--samples", "5000",
            "--seed", "9", "--threads", "2")
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]


def test_csv_formats(capsys):
    code, out, _ = run(capsys, "zeros", "--predict", "--N", "2", "--b", "0,1", "--k-window", "1", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("N,i,j,k,im_z")
    code, out, _ = run(capsys, "hciz", "--experiment", "--z", "0.05", "--N-list", "4,8", "--d-trunc", "8", "--format", "csv")
    assert out.splitlines()[0] == "N,z_re,z_im,F_re,F_im,C0_re,C0_im,gap"


def test_verify_negative_control(capsys):
    code, out, _ = run(capsys, "verify", "--inject-fault")
    assert code == 1
    assert "FAIL  characters.orthogonality" in out


def test_verify_quick_passes(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert {c["module"] for c in report["checks"]} >= {"characters", "monotone_hurwitz", "weingarten", "hciz_model",
                                                      "genfun", "zeros", "class_algebra", "combinatorics_core"}


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "hcizlab.cli", "hurwitz", "--d", "1"], capture_output=True, text=True,
                          cwd=tmp_path)
    assert proc.returncode == 0 and json.loads(proc.stdout)["rows"][0]["value"] == "1"

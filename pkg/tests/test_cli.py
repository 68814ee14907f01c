from __future__ import annotations

import json

import pytest

from conecert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_certify_table_branch(capsys):
    code, out = run(capsys, "certify", "G(1,2;H) x G(1,2;H)")
    cert = json.loads(out)
    assert code == 0
    assert cert["branch"] == "TABLE_7_TO_12" and cert["verdict"] == "MINIMIZING"
    assert cert["vanishing"]["angleDeg"] == pytest.approx(12.9754, abs=1e-3)
    assert cert["normalRadiusDeg"] == 90.0


def test_certify_scaled_branch(capsys):
    code, out = run(capsys, "certify", "Gor(2,5) x Gor(2,5)")
    cert = json.loads(out)
    assert cert["branch"] == "SCALED_K_GE_13" and cert["verdict"] == "MINIMIZING"
    assert cert["tanBound"] < 2 / 13


def test_certify_circle_is_inconclusive(capsys):
    code, out = run(capsys, "certify", "S(1) x G(1,3;R)")
    cert = json.loads(out)
    assert code == 0 and cert["verdict"] == "INCONCLUSIVE"
    assert any("stable" in n for n in cert["notes"])


def test_certify_uncatalogued_dim7(capsys):
    code, out = run(capsys, "certify", "S(1) x S(2) x G(1,3;R) x S(1)")
    cert = json.loads(out)
    assert cert["dimC"] == 7 and cert["branch"] == "CRITICAL_DIM7"
    assert cert["verdict"] == "INCONCLUSIVE"


def test_certify_is_deterministic(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    _, first = run(capsys, "certify", "G(2,4;R) x G(1,3;C)", "--json", str(out_file))
    _, second = run(capsys, "certify", "G(2,4;R) x G(1,3;C)")
    assert first == second
    assert out_file.read_text() == first


def test_certify_json_file(capsys, tmp_path):
    spec = tmp_path / "p.json"
    spec.write_text(json.dumps({"factors": ["G(1,3;R)", {"kind": "Sphere", "n": 5}]}))
    code, out = run(capsys, "certify", str(spec))
    assert code == 0 and json.loads(out)["dimM"] == 7


@pytest.mark.parametrize("argv", [
    ("certify", "G(3,4;R)"),
    ("certify", "nonsense"),
    ("critical7", "--case", "1", "--t", "0.45"),
    ("critical7", "--case", "unknown", "--t", "0.1"),
    ("oracle", "--check", "alpha"),
    ("table", "--kmin", "9", "--kmax", "8"),
    ("suite", "everything"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    assert main(list(argv)) == 2


def test_table(capsys):
    code, out = run(capsys, "table", "--kmin", "9", "--kmax", "9")
    rows = json.loads(out)["rows"]
    assert rows[0]["theta1Deg"] == pytest.approx(12.975, abs=1e-3)
    code, out = run(capsys, "table", "--csv")
    lines = out.strip().splitlines()
    assert lines[0] == "dimC,alphaSq,theta1Deg,theta2Deg" and len(lines) == 6


def test_critical7_case(capsys):
    code, out = run(capsys, "critical7", "--case", "RP3xRP3", "--t", "0.3")
    rep = json.loads(out)
    assert code == 0 and abs(rep["gap"]) < 1e-6 and rep["withinClaim"]


@pytest.mark.parametrize("check", ["alpha", "trace", "radius"])
def test_oracle_factor_checks(capsys, check):
    code, out = run(capsys, "oracle", "--factor", "G(2,5;C)", "--check", check)
    assert code == 0 and json.loads(out)["pass"]


def test_oracle_free_checks(capsys):
    assert run(capsys, "oracle", "--check", "plucker", "--n", "3")[0] == 0
    assert run(capsys, "oracle", "--check", "detfloor", "--trials", "10000")[0] == 0

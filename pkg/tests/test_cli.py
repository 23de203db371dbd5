import json
import subprocess
import sys

import pytest

from homog3.cli import main
from homog3.homstruct import canonical_structure
from homog3.lie import algebra_to_json, generic, nonunimodular, unimodular
from homog3.report import dumps


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def test_analyze_distinct(capsys):
    rc, out, _ = run(capsys, "analyze", "--unimodular", "1,2,4")
    assert rc == 0
    rep = json.loads(out)
    assert len(rep["structures"]) == 1 and rep["families"] == []
    s = rep["structures"][0]
    assert s["reconstruction"]["fingerprint"]["profile"] == "su2"
    assert s["holonomy_dim"] == 0
    assert rep["curvature"]["principal_ricci"] == ["-3/2", "-5/2", "15/2"]


def test_analyze_so2(capsys):
    rc, out, _ = run(capsys, "analyze", "--nonunimodular", "1,1")
    rep = json.loads(out)
    assert rc == 0
    assert len(rep["families"]) == 1 and len(rep["structures"]) == 1
    fam = rep["families"][0]
    assert fam["generic_holonomy_dim"] == 1
    assert fam["flat_parameters"] == ["-3"]
    assert {m["holonomy_dim"] for m in fam["flat_members"]} == {0}
    assert rep["curvature"]["scalar"] == "-10"


def test_analyze_locally_symmetric(capsys):
    rc, out, _ = run(capsys, "analyze", "--nonunimodular", "0,3", "--format", "text")
    assert rc == 0
    assert "locally symmetric - classification out of scope (Abe/Ohno)" in out


def test_analyze_text(capsys):
    rc, out, _ = run(capsys, "analyze", "--unimodular", "1,2,4", "--format", "text")
    assert "mu_i = (5/2, 3/2, -1/2)" in out
    assert "rho_i = (-3/2, -5/2, 15/2)" in out
    assert "class T2+T3" in out


@pytest.mark.parametrize("args", [("--unimodular", "1,2,4"), ("--nonunimodular", "1,1"), ("--unimodular", "1,1,3")])
def test_json_round_trip_is_byte_identical(capsys, args):
    _, first, _ = run(capsys, "analyze", *args)
    assert dumps(json.loads(first)) == first
    _, second, _ = run(capsys, "analyze", *args)
    assert first == second


@pytest.mark.parametrize("args", [("--unimodular", "1,2,4"), ("--nonunimodular", "1,1"), ("--unimodular", "1,1,3"), ("--nonunimodular", "1/2,1")])
def test_verify_passes_on_every_reported_structure(capsys, tmp_path, args):
    _, out, _ = run(capsys, "analyze", *args)
    rep = json.loads(out)
    payloads = [s["S"] for s in rep["structures"]]
    for fam in rep["families"]:
        payloads.append(fam["S"])
        payloads.append(fam["generic_member"]["S"])
        payloads += [m["S"] for m in fam["flat_members"]]
    assert payloads
    for k, S in enumerate(payloads):
        path = write(tmp_path, f"s{k}.json", {"S": S})
        rc, vout, _ = run(capsys, "verify", *args, "--structure", path)
        assert rc == 0 and json.loads(vout)["ok"] is True


def test_verify_failure_exit_code(capsys):
    S = canonical_structure(unimodular(1, 2, 4), "plus").to_json()["S"]
    rc, out, _ = run(capsys, "verify", "--unimodular", "1,2,4", "--S", ",".join(S), "--format", "text")
    assert rc == 1 and out.startswith("FAIL")


def test_input_file_with_embedded_structure(capsys, tmp_path):
    g = nonunimodular(1, 1)
    payload = {"algebra": algebra_to_json(g), "structure": canonical_structure(g).to_json()}
    path = write(tmp_path, "in.json", payload)
    rc, out, _ = run(capsys, "tv", "--input", path)
    assert rc == 0 and json.loads(out)["label"]
    rc, out, _ = run(capsys, "verify", "--input", path)
    assert rc == 0


def test_generic_input(capsys, tmp_path):
    path = write(tmp_path, "g.json", algebra_to_json(generic(unimodular(1, 2, 4).c)))
    rc, out, _ = run(capsys, "solve", "--input", path)
    assert rc == 0 and len(json.loads(out)["structures"]) == 1


def test_tv_command(capsys):
    S = canonical_structure(unimodular(1, 2, -3)).to_json()["S"]
    rc, out, _ = run(capsys, "tv", "--unimodular=1,2,-3", "--S", ",".join(S), "--format", "text")
    assert rc == 0 and out.startswith("class T2;")


def test_reconstruct_command(capsys):
    rc, out, _ = run(capsys, "reconstruct", "--nonunimodular", "1,1", "--r", "0", "--r", "-3")
    recs = json.loads(out)
    assert rc == 0
    dims = {r["label"]: r["dim"] for r in recs}
    assert dims == {"structure 1": 3, "family 1 at r=0": 4, "family 1 at r=-3": 3}


def test_contact_command(capsys):
    rc, out, _ = run(capsys, "contact", "--unimodular", "2,1,-1")
    js = json.loads(out)
    assert rc == 0 and js["kappa"] == "0" and js["mu"] == "2"


def test_sweep_r(capsys):
    rc, out, _ = run(capsys, "sweep", "--nonunimodular", "1,1", "--param", "r", "--from", "-4", "--to", "-2", "--step", "1")
    rows = [json.loads(line) for line in out.splitlines()]
    assert rc == 0
    assert [r["r"] for r in rows] == ["-4", "-3", "-2"]
    assert [r["holonomy_dim"] for r in rows] == [1, 0, 1]
    assert rows[2]["tv"] == "T2"


def test_sweep_alpha(capsys):
    rc, out, _ = run(capsys, "sweep", "--nonunimodular", "0,1", "--param", "alpha", "--from", "0", "--to", "1", "--step", "1/2")
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["kind"] for r in rows] == ["locally_symmetric", "structures", "structures"]
    assert all(r["minus_found"] for r in rows[1:])


def test_sweep_cap_aborts(capsys, monkeypatch):
    monkeypatch.setenv("HOMOG3_MAX_DENOM", "1")
    rc, out, err = run(capsys, "sweep", "--nonunimodular", "1,1", "--param", "r", "--from", "0", "--to", "1", "--step", "1/3")
    assert rc == 2
    assert "HOMOG3_MAX_DENOM" in err
    assert out.splitlines() == ['{"as_ok": true, "holonomy_dim": 1, "profile": "sl2R+R", "r": "0", "tv": "T2+T3"}']


@pytest.mark.parametrize(
    "argv, kind",
    [
        (["analyze", "--unimodular", "1.5,2,3"], "RationalParseError"),
        (["analyze", "--unimodular", "1,2"], "UsageError"),
        (["analyze", "--nonunimodular=-1,0"], "NormalizationViolated"),
        (["analyze"], "UsageError"),
        (["verify", "--unimodular", "1,2,4"], "UsageError"),
        (["verify", "--unimodular", "1,2,4", "--S", "1,2"], "UsageError"),
        (["tv", "--unimodular", "1,2,4", "--S", ",".join(["1"] * 27)], "MetricalConditionViolated"),
        (["analyze", "--input", "/nonexistent/file.json"], "FileNotFoundError"),
        (["sweep", "--unimodular", "1,2,4", "--param", "alpha", "--from", "0", "--to", "1", "--step", "1"], "UsageError"),
        (["sweep", "--unimodular", "1,2,4", "--param", "r", "--from", "0", "--to", "1", "--step", "1"], "UsageError"),
    ],
)
def test_errors_exit_2(capsys, argv, kind):
    rc, _, err = run(capsys, *argv)
    assert rc == 2
    assert err.startswith(f"homog3: error ({kind}):")


def test_jacobi_violation_from_file(capsys, tmp_path):
    c = [[["0"] * 3 for _ in range(3)] for _ in range(3)]
    for i, j, k in ((0, 1, 0), (1, 2, 1), (2, 0, 2)):
        c[i][j][k] = "1"
        c[j][i][k] = "-1"
    path = write(tmp_path, "bad.json", {"form": "generic", "c": c})
    rc, _, err = run(capsys, "analyze", "--input", path)
    assert rc == 2 and "JacobiViolation" in err


def test_invalid_json(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    rc, _, err = run(capsys, "analyze", "--input", str(p))
    assert rc == 2 and "invalid JSON" in err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "homog3.cli", "solve", "--unimodular", "1,1,3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["families"][0]["parameter"] == "r"

"""End-to-end CLI behavior: exit codes, reports, build/verify round trips."""

import json

import numpy as np
import pytest

from sl2rotor.cli import entry

HYP = "[[2, 0], [0, 0.5]]"


def run(capsys, *argv):
    code = entry(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# classify


def test_classify_hyperbolic(capsys):
    code, out, _ = run(capsys, "classify", HYP)
    rep = json.loads(out)
    assert code == 0
    assert rep["kind"] == "hyperbolic"
    assert rep["class"].startswith("Hyperbolic")
    assert rep["value"] == pytest.approx(2.0, abs=1e-12)
    assert rep["trace"] == 2.5
    assert rep["T"] == 0.0
    assert rep["log"]["cone_class"] == "indefinite"


def test_classify_elliptic_log_block(capsys):
    code, out, _ = run(capsys, "classify", "[[0, -1], [1, 0]]")
    rep = json.loads(out)
    assert code == 0
    assert rep["kind"] == "elliptic"
    assert rep["log"]["alpha"] == pytest.approx(np.pi / 2, abs=1e-12)
    assert rep["log"]["cone_class"] == "positive"


def test_classify_writes_report_file(capsys, tmp_path):
    f = tmp_path / "rep.json"
    code, out, _ = run(capsys, "classify", HYP, "--out", str(f))
    assert code == 0
    assert json.loads(f.read_text())["kind"] == "hyperbolic"


def test_classify_rejects_scaled_matrices(capsys):
    # the library normalizes positive scales; the CLI input contract is strict
    code, out, err = run(capsys, "classify", "[[2, 0], [0, 2]]")
    assert code == 2
    assert "determinant" in err
    assert json.loads(out)["passed"] is False


def test_classify_rejects_garbage(capsys):
    code, _, err = run(capsys, "classify", "[[1, 2], [3]]")
    assert code == 2
    assert err


def test_csv_format(capsys):
    code, out, _ = run(capsys, "classify", HYP, "--format", "csv")
    assert code == 0
    keys = dict(line.split(",", 1) for line in out.strip().split("\n"))
    assert keys["kind"] == "'hyperbolic'"
    assert "log.alpha" in keys


# ---------------------------------------------------------------------------
# verify


def test_verify_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "three-classes")
    rep = json.loads(out)
    assert code == 0
    assert rep["passed"] is True
    assert rep["cases"] == 125


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "no-such-suite")
    assert code == 2
    assert "no-such-suite" in err or "invalid choice" in err


def test_usage_error_on_empty_args(capsys):
    assert run(capsys, "verify")[0] == 2  # needs a suite or --artifact


# ---------------------------------------------------------------------------
# build / verify round trips


def test_spiral_build_round_trip(capsys, tmp_path):
    f = tmp_path / "spiral.json"
    code, out, _ = run(capsys, "build", "spiral-path", "r=2", "--out", str(f))
    assert code == 0
    obj = json.loads(f.read_text())
    assert obj["claims"]["rot_gain"] == 2.0
    assert obj["claims"]["nonneg"] is True
    code, out, _ = run(capsys, "verify", "--artifact", str(f))
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_build_is_deterministic(capsys, tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "build", "elliptic-path", "--seed", "5", "--out", str(f1))
    run(capsys, "build", "elliptic-path", "--seed", "5", "--out", str(f2))
    assert f1.read_bytes() == f2.read_bytes()


def test_doctored_claim_fails_verification(capsys, tmp_path):
    f = tmp_path / "spiral.json"
    run(capsys, "build", "spiral-path", "r=1", "--out", str(f))
    obj = json.loads(f.read_text())
    obj["claims"]["rot_gain"] = 3.0
    f.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", "--artifact", str(f))
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_hyperbolic_to_cylinder_chain(capsys, tmp_path):
    path_file = tmp_path / "path.json"
    code, _, _ = run(capsys, "build", "hyperbolic-path", "invert=true",
                     "--res", "64", "--out", str(path_file))
    assert code == 0
    assert json.loads(path_file.read_text())["claims"]["nonpos"] is True

    cyl_file = tmp_path / "cyl.json"
    code, _, _ = run(capsys, "build", "cylinder", f"src={path_file}",
                     "--res", "64", "--out", str(cyl_file))
    assert code == 0
    obj = json.loads(cyl_file.read_text())
    assert obj["claims"]["nonneg_curved"] is True
    code, out, _ = run(capsys, "verify", "--artifact", str(cyl_file))
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_cover_build_claims(capsys, tmp_path):
    f = tmp_path / "cover.json"
    code, _, _ = run(capsys, "build", "cover", "mu=3", "--res", "64",
                     "--out", str(f))
    assert code == 0
    assert json.loads(f.read_text())["claims"]["rot"] == 3.0


def test_unknown_build_parameter(capsys, tmp_path):
    f = tmp_path / "x.json"
    code, _, err = run(capsys, "build", "spiral-path", "bogus=1", "--out", str(f))
    assert code == 2
    assert "bogus" in err


def test_unknown_build_kind(capsys, tmp_path):
    code = entry(["build", "nonsense", "--out", str(tmp_path / "x.json")])
    capsys.readouterr()
    assert code == 2

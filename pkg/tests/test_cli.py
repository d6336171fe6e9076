import json

import pytest

import cli
import gldim
import lattice
import stability
from exactnum import GaussRat
from stability import StabilityParam
from utils import dump_json


def _run(capsys, argv):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def test_parse_classify():
    args = cli.parse_args(["classify", "--A", "2,3,6"])
    assert args.command == "classify"
    assert args.spec.weights == (2, 3, 6)


def test_parse_charge():
    args = cli.parse_args(["charge", "--A", "2,3,7", "--tau", "0,1", "--obj", "O(1*c)"])
    assert args.tau == GaussRat(0, 1)
    assert args.obj.x == lattice.canonical((2, 3, 7))


@pytest.mark.parametrize("argv", [
    ["charge", "--A", "2,3,7", "--tau", "0,-1", "--obj", "O(1*c)"],
    ["charge", "--A", "2,3,7", "--obj", "Q(1)"],
    ["classify", "--A", "2,3"],
    ["gldim", "--A", "2,3,7", "--N", "3"],
    ["scan", "--A", "2,3,7", "--grid", "0,-2"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as excinfo:
        cli.parse_args(argv)
    assert excinfo.value.code == 2


def test_classify_json(capsys):
    code, out = _run(capsys, ["classify", "--A", "2,3,7", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["type"] == "Wild"
    assert data["chi"] == "-1/42"
    assert data["deg_omega"] == 1
    assert data["fractional_cy"] is None


def test_normal_form_round_trip(capsys):
    code, out = _run(capsys, ["normal-form", "--A", "2,3,7", "--vec", "5*x3 - c + 3*x1"])
    assert code == 0
    printed = out.strip()
    assert printed == "0*c+1*x1+5*x3"
    assert lattice.parse_lvec((2, 3, 7), printed) == lattice.parse_lvec((2, 3, 7), "5*x3 - c + 3*x1")


def test_k0_class(capsys):
    code, out = _run(capsys, ["k0-class", "--A", "2,2,2,2", "--obj", "S[*]", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["class"]["S"] == 1
    assert data["degree"] == 2
    assert data["tilting_coordinates"] == {"0*c": -1, "1*c": 1}


def test_charge(capsys):
    code, out = _run(capsys, ["charge", "--A", "2,3,7", "--tau", "0,1",
                              "--obj", "O(-2*c+1*x1+2*x2+6*x3)", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["charge"] == ["-1", "1"]
    assert data["phase"]["exact"] == "3/4"
    assert data["verdict"]["certificate"] == "LineBundleStable"


def test_homdim(capsys):
    code, out = _run(capsys, ["homdim", "--A", "2,2,2,2", "S[1,0]", "S[1,1]", "--ext"])
    assert code == 0
    assert out.strip() == "dim Ext^1(S[1,0], S[1,1]) = 1"


def test_gldim_domestic_json(capsys):
    code, out = _run(capsys, ["gldim", "--A", "2,3,5", "--tau", "0,1", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["exact_flag"] == "ExactGlobal"
    assert data["value"] == "1"
    assert data["witness"] == {"a": "S[*]", "b": "S[*]", "ext": True}


def test_verify_theorems_tubular(capsys):
    code, out = _run(capsys, ["verify-theorems", "--A", "2,2,2,2"])
    assert code == 0
    data = json.loads(out)
    assert data["gepner"] is True
    assert data["gldim"] == "1 (exact)"
    assert data["failures"] == []


def test_verify_theorems_wild(capsys):
    code, out = _run(capsys, ["verify-theorems", "--A", "2,3,7", "--tau", "0,1"])
    assert code == 0
    data = json.loads(out)
    assert data["gepner"] is False
    assert data["lower_bound_float"] == pytest.approx(1.25)
    assert data["wild_gap"]["value"] == "5/4"


def test_verify_theorems_failure_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(gldim, "gepner_check", lambda spec, sigma: True)
    code, out = _run(capsys, ["verify-theorems", "--A", "2,3,5"])
    assert code == 1
    assert "gepner_matches_type" in json.loads(out)["failures"]


def test_check_thm1(tmp_path, capsys):
    w = (2, 3, 7)
    sigma = StabilityParam(GaussRat(1, 2))
    good = tmp_path / "good.json"
    good.write_text(dump_json(stability.charge_assignment_from_tau(w, sigma)))
    code, out = _run(capsys, ["check-thm1", "--A", "2,3,7", "--charges", str(good)])
    assert code == 0
    assert out.strip() == "Accept(tau = 1+2i)"

    bad = tmp_path / "bad.json"
    perturbed = stability.perturbed_assignments(w, sigma)[stability.RejectReason.MASS]
    bad.write_text(dump_json(perturbed))
    code, out = _run(capsys, ["check-thm1", "--A", "2,3,7", "--charges", str(bad), "--json"])
    assert code == 1
    assert json.loads(out)["reason"] == "mass"


def test_check_thm1_bad_charge_file_exit_2(tmp_path, capsys):
    partial = tmp_path / "partial.json"
    partial.write_text(json.dumps({"O": ["0", "1"]}))
    not_a_map = tmp_path / "list.json"
    not_a_map.write_text(json.dumps([["0", "1"]]))
    for path in (partial, not_a_map, tmp_path / "missing.json"):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["check-thm1", "--A", "2,3,7", "--charges", str(path)])
        assert excinfo.value.code == 2
        assert capsys.readouterr().out == ""


def test_scan_output_independent_of_threads(tmp_path, capsys):
    paths = []
    for threads in (1, 3):
        path = tmp_path / f"scan_{threads}.csv"
        code, _ = _run(capsys, ["scan", "--A", "2,3,7", "--grid", "re=0,1:im=1,2",
                                "--L", "2", "--N", "7", "--out", str(path),
                                "--threads", str(threads)])
        assert code == 0
        paths.append(path)
    first, second = (p.read_bytes() for p in paths)
    assert first == second
    header = first.decode().splitlines()[0]
    assert header == ",".join(gldim.SCAN_COLUMNS)
    assert first.decode().splitlines()[-1].startswith("*,*,")


def test_scan_to_stdout(capsys):
    code, out = _run(capsys, ["scan", "--A", "2,2,2,2", "--grid", "0,1;1,1", "--L", "1", "--N", "2"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == ",".join(gldim.SCAN_COLUMNS)
    assert lines[1].startswith("0,1,1,ExactGlobal,")
    assert len(lines) == 4


def test_internal_error_exit_3(capsys, monkeypatch):
    def boom(catalog):
        raise RuntimeError("boom")

    monkeypatch.setattr(gldim, "max_gap", boom)
    code, out = _run(capsys, ["gldim", "--A", "2,2,2,2"])
    assert code == 3
    assert out == ""

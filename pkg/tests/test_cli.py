import copy
import json
import subprocess
import sys

import pytest

from globengine import cli, fixtures
from globengine.verdicts import InternalConsistencyError
from globengine.workspace import InputError, Workspace, fixtures_dir


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# ---- workspace -------------------------------------------------------------

def test_shipped_fixture_document_is_current():
    shipped = json.loads((fixtures_dir() / "default.json").read_text())
    assert shipped == json.loads(json.dumps(fixtures.document()))


def test_load_report_covers_every_declared_object():
    ws = Workspace.load()
    report = dict(ws.load_report())
    assert {t for t, v in report.items() if not v} == {"gpc:broken_pi", "gpc:broken_rho", "gpc:broken_theta"}
    assert "partial:C4_X01" in report and "coalgebra:QC2" in report


def test_digest_tracks_references():
    doc = fixtures.document()
    a = Workspace([doc]).digest("cover:graded3")
    doc2 = copy.deepcopy(doc)
    doc2["coalgebras"]["QC3"]["eps"] = [["1", "1", "2"]]       # unrelated entry
    assert Workspace([doc2]).digest("cover:graded3") == a
    doc2["coalgebras"]["QC2"]["eps"] = [["1", "2"]]            # referenced through graded3
    assert Workspace([doc2]).digest("cover:graded3") != a


def test_unresolved_reference():
    with pytest.raises(InputError):
        Workspace([{"version": 1}]).get("gpc:missing")


# ---- commands --------------------------------------------------------------

def test_check_coalgebra(capsys):
    code, rep = run_json(capsys, "check", "coalgebra:QC2")
    assert code == 0 and rep["status"] == "pass" and len(rep["input_digest"]) == 64


def test_check_trivial_gpc_prints_certificates(capsys):
    code, rep = run_json(capsys, "check", "gpc:trivial_V")
    assert code == 0
    assert rep["certificates"]["X•ε"]["matrix"] == [["1", "0"], ["0", "1"]]
    assert rep["certificates"]["theta"]["matrix"] == [["1", "0"], ["0", "1"]]


@pytest.mark.parametrize("name,law", [("broken_rho", "rho_triangle"), ("broken_pi", "pi_triangle"),
                                      ("broken_theta", "theta_square")])
def test_check_broken_data(capsys, name, law):
    code, rep = run_json(capsys, "check", f"gpc:{name}")
    assert code == 1 and rep["law"] == law and rep["witness"] is not None


def test_malformed_shape_reports_location(capsys, tmp_path):
    doc = {"version": 1, "gpcs": {"bad": {"X": {"dim": 1}, "XbulletH": {"dim": 2},
                                          "pi": [["1", "0"], ["0", "1"]], "rho": [["1"], ["0"], ["5"]],
                                          "coalgebra_ref": "QC2"}}}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, rep = run_json(capsys, "check", "gpc:bad", "--input", str(f))
    assert code == 2 and rep["error"].startswith("gpc:bad:")


def test_unknown_target_is_input_error(capsys):
    code, rep = run_json(capsys, "check", "gpc:nope")
    assert code == 2 and "unresolved" in rep["error"]
    code, rep = run_json(capsys, "check", "nonsense")
    assert code == 2


def test_bad_version_is_input_error(capsys, tmp_path):
    f = tmp_path / "v.json"
    f.write_text('{"version": 99}')
    code, _ = run_json(capsys, "check", "coalgebra:QC2", "-i", str(f))
    assert code == 2


def test_globalize_trivial_text(capsys):
    code, out = run(capsys, "globalize", "gpc:trivial_V", "--format", "text")
    assert code == 0
    assert "Globalizable, dim Y_X = 4 = dim X × dim H = 2 × 2" in out


def test_globalize_report_fields(capsys):
    code, rep = run_json(capsys, "globalize", "gpc:induced_graded3")
    assert code == 0 and rep["status"] == "Globalizable"
    assert rep["dims"] == {"X": 2, "H": 2, "X•H": 3, "Y_X": 3, "P": 3}
    assert {"kappa", "eps_X", "coaction_Y_X", "comparison", "input_digest"} <= set(rep)


def test_globalize_rejects_broken_data(capsys):
    code, rep = run_json(capsys, "globalize", "gpc:broken_theta")
    assert code == 1 and rep["status"] == "not geometric"


def test_globalize_global_comodule(capsys):
    code, rep = run_json(capsys, "globalize", "comodule:graded3")
    assert code == 0 and rep["dims"]["Y_X"] == 3


def test_induce(capsys):
    code, rep = run_json(capsys, "induce", "cover:graded3")
    assert code == 0 and rep["dims"]["X•H"] == 3 and "p•" in rep["certificates"]


def test_cover_analyze(capsys):
    code, rep = run_json(capsys, "cover", "analyze", "cover:graded3")
    assert code == 0 and rep["proper"] and rep["minimal"]
    assert rep["p_tilde"]["dom"] == rep["p_tilde"]["cod"] == 3
    code, rep = run_json(capsys, "cover", "analyze", "cover:doubled")
    assert code == 0 and not rep["proper"] and not rep["minimal"]
    code, rep = run_json(capsys, "cover", "proper", "cover:doubled")
    assert code == 1 and rep["kernel"]["dom"] == 2


def test_pset_globalize_text(capsys):
    code, out = run(capsys, "pset", "globalize", "partial:C4_X01", "--format", "text")
    assert code == 0 and "|Y| = 4" in out and "constructions agree = true" in out


def test_pset_globalize_json(capsys):
    code, rep = run_json(capsys, "pset", "globalize", "partial:C2_point")
    assert code == 0 and rep["size"] == 2 and rep["constructions_agree"]
    assert rep["embed"] == {"p": "[0,p]"}


def test_pset_other_actions(capsys):
    assert run(capsys, "pset", "check", "partial:C4_X01")[0] == 0
    assert run(capsys, "pset", "roundtrip", "partial:C4_X01")[0] == 0
    assert run(capsys, "pset", "minimality", "partial:C4_X01")[0] == 0
    code, rep = run_json(capsys, "pset", "restrict", "action:C4_translate", "--subset", "0,1")
    assert code == 0 and rep["domain_pairs"] == [["0", "0"], ["0", "1"], ["1", "0"], ["3", "1"]]
    assert run(capsys, "pset", "restrict", "action:C4_translate", "--subset", "0,9")[0] == 2


def test_roundtrip(capsys):
    code, rep = run_json(capsys, "roundtrip", "cover:graded3", "gpc:trivial_V", "partial:C2_point")
    assert code == 0 and [r["status"] for r in rep["reports"]] == ["pass"] * 3


def test_laws(capsys):
    code, rep = run_json(capsys, "laws", "--count", "3", "--seed", "5")
    assert code == 0 and rep["seed"] == 5
    assert [s["failures"] for s in rep["suites"]] == [0, 0, 0, 0]


def test_check_all(capsys):
    code, rep = run_json(capsys, "check", "--all")
    assert code == 1                                    # the broken data fail on purpose
    failing = {r["target"] for r in rep["reports"] if r["exit_code"]}
    assert failing == {"gpc:broken_pi", "gpc:broken_rho", "gpc:broken_theta"}


def test_internal_error_exit_code(capsys, monkeypatch):
    def boom(*a):
        raise InternalConsistencyError("forced")

    monkeypatch.setitem(cli.HANDLERS, "check", boom)
    code, rep = run_json(capsys, "check", "coalgebra:QC2")
    assert code == 3 and rep["status"] == "internal error"


def test_fixture_dir_override(capsys, monkeypatch, tmp_path):
    doc = {"version": 1, "coalgebras": {"only": fixtures.document()["coalgebras"]["QC2"]}}
    (tmp_path / "x.json").write_text(json.dumps(doc))
    monkeypatch.setenv("GLOBENGINE_FIXTURES", str(tmp_path))
    assert run(capsys, "check", "coalgebra:only")[0] == 0
    assert run(capsys, "check", "coalgebra:QC2")[0] == 2


def test_reports_are_deterministic(capsys):
    argv = ["globalize", "gpc:induced_graded3", "gpc:trivial_V", "comodule:graded2"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b


def test_parallel_batch_matches_serial():
    argv = [sys.executable, "-m", "globengine.cli", "globalize", "gpc:induced_graded3", "gpc:trivial_V",
            "gpc:induced_point"]
    serial = subprocess.run(argv, capture_output=True, text=True, check=False)
    parallel = subprocess.run(argv + ["--jobs", "3"], capture_output=True, text=True, check=False)
    assert serial.returncode == parallel.returncode == 0
    assert serial.stdout == parallel.stdout

import json
from pathlib import Path

import pytest

from boundedcoh.cli import main
from boundedcoh.workspace import (WorkspaceError, load_workspace,
                                  parse_workspace, run_job)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_load_z2_fixture():
    ws = load_workspace(FIXTURES / "z2.json")
    assert ws.groupoid.num_objects == 1
    assert ws.groupoid.num_morphisms == 2
    assert ws.module.fiber_dims == [1]
    assert [j["job"] for j in ws.jobs] == ["cohomology", "seminorm",
                                          "amenable-vanishing"]


def test_load_names_broken_axioms():
    with pytest.raises(WorkspaceError, match="associativity.*1, 1, 2"):
        load_workspace(FIXTURES / "bad_assoc.json")
    with pytest.raises(WorkspaceError, match="no two-sided inverse"):
        load_workspace(FIXTURES / "bad_inverse.json")


def test_parse_rejects_schema_problems():
    with pytest.raises(WorkspaceError, match="exactly one"):
        parse_workspace({})
    with pytest.raises(WorkspaceError, match="exactly one"):
        parse_workspace({"group_table": [[0]], "blowup": {}})
    with pytest.raises(WorkspaceError, match="unknown key"):
        parse_workspace({"group_table": [[0]], "extra": 1})
    with pytest.raises(WorkspaceError, match="unknown job"):
        parse_workspace({"group_table": [[0]], "jobs": [{"job": "frobnicate"}]})
    with pytest.raises(WorkspaceError, match="pairs"):
        parse_workspace({"group_table": [[0]],
                         "jobs": [{"job": "relative", "pair": 0}]})
    with pytest.raises(WorkspaceError, match="bad rational"):
        parse_workspace({"group_table": [[0, 1], [1, 0]],
                         "module": {"dims": [1], "norms": [{"kind": "l1"}],
                                    "actions": [[["1"]], [["1/0"]]]}})


def test_parse_rejects_non_isometric_module():
    doc = {"group_table": [[0, 1], [1, 0]],
           "module": {"dims": [1], "norms": [{"kind": "l1"}],
                      "actions": [[["1"]], [["2"]]]}}
    with pytest.raises(WorkspaceError, match="module axiom"):
        parse_workspace(doc)


def test_cli_z2_workspace(capsys):
    code, out, _ = run_cli(["--workspace", str(FIXTURES / "z2.json")], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    coh = doc["jobs"][0]
    assert coh["dims"] == [1, 0, 0, 0]
    assert coh["classes"][0][0]["seminorm"] == "1"


def test_cli_single_job_flag(capsys):
    code, out, _ = run_cli(["--workspace", str(FIXTURES / "z2.json"),
                            "--job", "cohomology", "--degree", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert [j["job"] for j in doc["jobs"]] == ["cohomology"]
    assert doc["jobs"][0]["dims"] == [1, 0, 0]


def test_cli_relative_job_reports_class(capsys):
    code, out, _ = run_cli(["--workspace", str(FIXTURES / "blowup_pair.json"),
                            "--job", "relative", "--degree", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    rel = doc["jobs"][0]
    assert rel["dims"] == [0, 1, 0]
    cls = rel["classes"][1][0]
    assert cls["seminorm"] == "1"
    assert cls["witness"] is not None


def test_cli_exit_codes(capsys, tmp_path):
    code, _, err = run_cli(["--workspace",
                            str(FIXTURES / "bad_assoc.json")], capsys)
    assert code == 2 and "associativity" in err
    code, _, err = run_cli(["--workspace", str(FIXTURES / "z2.json"),
                            "--job", "cohomology", "--path-cap", "3"], capsys)
    assert code == 3 and "cap" in err
    code, _, err = run_cli(["--workspace", str(tmp_path / "missing.json")],
                           capsys)
    assert code == 2
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    code, _, err = run_cli(["--workspace", str(bad)], capsys)
    assert code == 2 and "parse error" in err


def test_cli_seminorm_rejects_non_cocycle(capsys, tmp_path):
    doc = {"group_table": [[0, 1], [1, 0]],
           "jobs": [{"job": "seminorm", "degree": 1,
                     "cocycle": ["1", "0"]}]}
    path = tmp_path / "ws.json"
    path.write_text(json.dumps(doc))
    code, _, err = run_cli(["--workspace", str(path)], capsys)
    assert code == 2 and "not a cocycle" in err


def test_cli_defaults_to_verify_all(capsys, tmp_path):
    path = tmp_path / "ws.json"
    path.write_text(json.dumps({"group_table": [[0]]}))
    code, out, _ = run_cli(["--workspace", str(path), "--degree", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["jobs"][0]["job"] == "verify-all"
    assert doc["pass"] is True


def test_cli_reports_are_byte_identical(capsys, tmp_path):
    args = ["--workspace", str(FIXTURES / "blowup_pair.json"), "--degree", "2"]
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(args + ["--report", str(r1)]) == 0
    assert main(args + ["--report", str(r2)]) == 0
    capsys.readouterr()
    assert r1.read_bytes() == r2.read_bytes()


def test_all_bundled_fixture_workspaces_pass(capsys):
    for name in ("z2", "z2_sign", "blowup_pair", "two_components",
                 "action_swap"):
        code, out, err = run_cli(
            ["--workspace", str(FIXTURES / ("%s.json" % name))], capsys)
        assert code == 0, (name, err)
        assert json.loads(out)["pass"] is True


def test_run_job_direct_seminorm_class():
    ws = load_workspace(FIXTURES / "two_components.json")
    rep = run_job(ws, {"job": "seminorm", "degree": 0, "class": 1})
    assert rep["value"] == "1"
    rep = run_job(ws, {"job": "additivity", "degree": 1})
    assert rep["dims"][0] == 2
    assert rep["component_dims"][0] == [1, 1]
    assert rep["pass"] is True

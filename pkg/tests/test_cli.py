import json

import pytest

from pervcoh.bundled import data_path
from pervcoh.cli import Report, execute, main, render_report
from pervcoh.scenario_io import (
    ScenarioError,
    digest,
    dump_scenario,
    load_scenario,
    scenario_from_dict,
    scenario_to_dict,
)
from pervcoh.verdicts import CheckRecord

from .helpers import FIXTURES

GOLDEN = FIXTURES.parent / "golden"
CONE, LINE, PLANE = (str(data_path(f"{n}.json")) for n in ("cone", "line", "plane"))

EXIT_CODES = [
    (["validate", CONE], 0),
    (["validate", LINE], 0),
    (["validate", PLANE], 0),
    (["crossvalidate", CONE], 0),
    (["crossvalidate", LINE], 0),
    (["crossvalidate", PLANE], 0),
    (["check", CONE, "--complex", "O_X[1]"], 0),
    (["check", CONE, "--complex", "O_X[1]", "--family", "line"], 0),
    (["check", CONE, "--complex", "O_X"], 2),
    (["check", CONE, "--complex", "O_X[2]"], 2),
    (["check", PLANE, "--complex", "O[2]", "--family", "origin"], 0),
    (["construct", CONE, "--pool", "y"], 0),
    (["construct", PLANE, "--pool", "x+y", "x*y"], 0),
    (["construct", LINE, "--seed", "3"], 0),
    (["construct", CONE, "--pool", "x-1", "--max-attempts", "0"], 2),
    (["oracle", CONE, "--complex", "O_X", "--ideal", "line", "--i", "1", "--tmax", "4"], 0),
    (["oracle", PLANE, "--complex", "O", "--ideal", "origin", "--i", "2", "--tmax", "3"], 0),
    (["validate", str(FIXTURES / "fail_stratum_dim.json")], 2),
    (["validate", str(FIXTURES / "fail_comonotone.json")], 2),
    (["validate", str(FIXTURES / "fail_not_complex.json")], 2),
    (["crossvalidate", str(FIXTURES / "fail_measuring.json")], 2),
    (["check", str(FIXTURES / "fail_measuring.json"), "--complex", "O_X[1]", "--family", "point"], 2),
    (["check", str(FIXTURES / "nonstratified.json"), "--complex", "O_line"], 1),
    (["check", str(FIXTURES / "fail_not_complex.json"), "--complex", "broken"], 1),
    (["construct", str(FIXTURES / "fail_comonotone.json")], 1),
    (["validate", str(FIXTURES / "malformed_unknown_field.json")], 1),
    (["validate", str(FIXTURES / "malformed_undeclared_variable.json")], 1),
    (["validate", str(FIXTURES / "malformed_json.json")], 1),
    (["validate", str(FIXTURES / "malformed_missing_field.json")], 1),
    (["validate", str(FIXTURES / "does_not_exist.json")], 1),
    (["check", CONE], 1),
    (["check", CONE, "--complex", "nope"], 1),
    (["oracle", CONE, "--complex", "O_X", "--ideal", "nope", "--i", "0"], 1),
    (["frobnicate", CONE], 1),
    ([], 1),
]


@pytest.mark.parametrize("argv,code", EXIT_CODES, ids=[" ".join(a[:1] + [a[1].rsplit("/", 1)[-1]] if len(a) > 1 else a) + f"->{c}" for a, c in EXIT_CODES])
def test_exit_codes(argv, code):
    got, rep, err = execute(argv)
    assert got == code, err
    if code == 1:
        assert rep is None and err
    else:
        assert rep is not None and rep.passed == (code == 0)


def test_main_streams(capsys):
    assert main(["check", CONE, "--complex", "O_X"]) == 2
    out, err = capsys.readouterr()
    report = json.loads(out)
    assert report["status"] == "fail"
    le0 = report["checks"][0]
    assert le0["name"] == "le0"
    assert (le0["witnesses"][0]["stratum"], le0["witnesses"][0]["degree"]) == ("open", 0)
    assert err.startswith("FAIL le0")


def test_error_messages_name_the_location(capsys):
    assert main(["validate", str(FIXTURES / "malformed_undeclared_variable.json")]) == 1
    out, err = capsys.readouterr()
    assert out == ""
    assert "$.strata[1].ideal[0]" in err and "'w'" in err
    main(["validate", str(FIXTURES / "malformed_json.json")])
    assert "malformed_json.json:3:1" in capsys.readouterr().err
    main(["validate", str(FIXTURES / "malformed_unknown_field.json")])
    assert "unknown field 'colour'" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["crossvalidate", CONE],
    ["check", CONE, "--complex", "O_X"],
    ["construct", PLANE, "--seed", "5"],
])
def test_reports_are_deterministic(argv):
    a = render_report(execute(argv)[1])
    b = render_report(execute(argv)[1])
    assert a == b


GOLDENS = {
    "check_cone_O_X.json": ["check", CONE, "--complex", "O_X"],
    "crossvalidate_line.json": ["crossvalidate", LINE],
    "construct_plane_pool.json": ["construct", PLANE, "--pool", "x+y", "x*y"],
    "oracle_cone.json": ["oracle", CONE, "--complex", "O_X", "--ideal", "line", "--i", "1", "--tmax", "3"],
}


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_golden_reports(name):
    got = render_report(execute(GOLDENS[name])[1])
    assert got == (GOLDEN / name).read_text()


def test_render_modes():
    ok = Report("validate", "d", [CheckRecord("a", True, [], timing=0.5)])
    bad = Report("validate", "d", [CheckRecord("a", True), CheckRecord("b", False, [{"k": 1}, {"k": 2}])])
    assert render_report(ok) == render_report(Report("validate", "d", [CheckRecord("a", True, [], timing=9.0)]))
    assert "witness" not in render_report(ok, "summary")
    summary = render_report(bad, "summary")
    assert len(summary.splitlines()) == 2
    assert 'first witness: {"k": 1}' in summary and '"k": 2' not in summary
    assert json.loads(render_report(bad))["status"] == "fail"
    with pytest.raises(ValueError):
        render_report(ok, "html")


def test_construct_then_check_round_trip(tmp_path):
    out = tmp_path / "cone_z.json"
    code, rep, _ = execute(["construct", CONE, "--seed", "2", "--name", "Z", "--out", str(out)])
    assert code == 0
    S = load_scenario(out)
    assert "Z" in S.measuring and "line" in S.measuring
    assert rep.info["written_digest"] == digest(S)
    code, rep, err = execute(["check", str(out), "--complex", "O_X[1]", "--family", "Z"])
    assert code == 0, err
    assert [c.name for c in rep.checks] == ["le0", "ge0", "measuring:Z", "family_coverage",
                                            "concentration:Z", "agreement"]


def test_crossvalidate_reports_every_complex():
    rep = execute(["crossvalidate", PLANE])[1]
    S = load_scenario(PLANE)
    names = [c.name for c in rep.checks if c.name.startswith("agreement:")]
    assert names == [f"agreement:{n}" for n in S.complexes]
    perverse = sorted(c.name for c in rep.checks if c.detail.get("perverse"))
    assert perverse == ["agreement:O[2]", "agreement:O_xaxis[1]", "agreement:O_yaxis[1]", "agreement:k_0"]


# -- scenario files --------------------------------------------------------------------


def test_digest_is_stable_across_reserialization(tmp_path, bundled):
    for name, S in bundled.items():
        path = tmp_path / f"{name}.json"
        dump_scenario(S, path)
        again = load_scenario(path)
        assert digest(again) == digest(S)
        assert scenario_to_dict(again) == scenario_to_dict(S)
        assert path.read_text() == data_path(f"{name}.json").read_text()


def _cone_dict():
    return json.loads(data_path("cone.json").read_text())


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d["strata"][0].update(colour=1), "$.strata[0]: unknown field 'colour'"),
    (lambda d: d["strata"][0].update(dim=-1), "$.strata[0].dim"),
    (lambda d: d["strata"][0].update(dim=True), "$.strata[0].dim"),
    (lambda d: d.update(variables=["x", "x", "z"]), "$.variables"),
    (lambda d: d["perversity"].update(two=1), "$.perversity.two"),
    (lambda d: d["complexes"]["O_X"].update(ranks=[1]), "$.complexes.O_X.ranks"),
    (lambda d: d["complexes"]["O_X"]["differentials"].update({"-1": [["x", "y"]]}), "$.complexes.O_X.differentials.-1[0]"),
    (lambda d: d["complexes"]["O_X"]["differentials"].update({"5": [["x"]]}), "$.complexes.O_X.differentials.5"),
    (lambda d: d["measuring"]["line"]["cutting"][0].pop("step"), "$.measuring.line.cutting[0]: missing field 'step'"),
    (lambda d: d["measuring"]["line"].update(cutting=[{"function": "q", "step": 0}]), "$.measuring.line.cutting[0].function"),
])
def test_schema_errors(mutate, where):
    d = _cone_dict()
    mutate(d)
    with pytest.raises(ScenarioError) as err:
        scenario_from_dict(d)
    assert str(err.value).startswith(where) or where in str(err.value)

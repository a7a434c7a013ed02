import dataclasses

import pytest

from pervcoh.homcx import cohomology_is_zero, cohomology_module
from pervcoh.polycore import Matrix, PresentedModule, direct_sum, split_acyclic
from pervcoh.scenario_io import scenario_from_dict, scenario_to_dict
from pervcoh.stratspace import (
    Perversity,
    PerversityError,
    Stratum,
    maximal_strata,
    stratified_support_check,
    validate_scenario,
)

from .helpers import I


def failing(report):
    return [c.name for c in report.checks if not c.result]


def test_cone_validates(cone):
    r = validate_scenario(cone)
    assert r.ok, failing(r)
    assert r.flags["strictly_monotone"]
    assert any("prime" in a for a in r.assumptions)


FLAGS = {
    # p, dual p, and the strict flags across the stratum dimensions
    "cone": dict(monotone=True, strictly_monotone=True, comonotone=True,
                 strictly_comonotone=True, in_range=True),
    "line": dict(monotone=True, strictly_monotone=True, comonotone=True,
                 strictly_comonotone=False, in_range=True),
    "plane": dict(monotone=True, strictly_monotone=True, comonotone=True,
                  strictly_comonotone=False, in_range=True),
}


@pytest.mark.parametrize("name", sorted(FLAGS))
def test_bundled_flags(bundled, name):
    r = validate_scenario(bundled[name])
    assert r.ok, failing(r)
    assert r.flags == FLAGS[name]


def test_wrong_declared_dimension(cone):
    bad = dataclasses.replace(cone, strata=(Stratum("origin", I("x", "y", "z"), 1),) + cone.strata[1:])
    r = validate_scenario(bad)
    check = next(c for c in r.checks if c.name == "stratum_dim:origin")
    assert not check.result
    assert check.witnesses == [{"stratum": "origin", "computed": 0, "declared": 1}]


def test_comonotone_failure():
    p = Perversity({0: 0, 1: -2})
    assert p.monotone() and not p.comonotone()
    assert [p.dual(0), p.dual(1)] == [0, 1]
    assert p.first_comonotone_violation() == (0, 1)
    assert not p.in_range()


def test_perversity_lookup():
    p = Perversity({0: 0, 1: -1})
    assert p(-1) == 0 and p(1) == -1
    with pytest.raises(PerversityError):
        p(2)


def test_stratum_outside_variety(cone):
    bad = dataclasses.replace(cone, strata=cone.strata + (Stratum("plane", I("x"), 2),))
    r = validate_scenario(bad)
    assert "stratum_in_variety:plane" in failing(r)


def test_strata_must_cover(cone):
    bad = dataclasses.replace(cone, strata=cone.strata[:1])
    r = validate_scenario(bad)
    assert "strata_cover_variety" in failing(r)
    assert "variety_dim" in failing(r)


def test_incomplete_perversity(cone):
    bad = dataclasses.replace(cone, perversity=Perversity({0: 0, 2: -1}))
    check = next(c for c in validate_scenario(bad).checks if c.name == "perversity_complete")
    assert not check.result and check.witnesses == [{"missing": [1], "extra": []}]


def test_validate_is_idempotent_and_survives_round_trip(bundled):
    for S in bundled.values():
        a = validate_scenario(S)
        b = validate_scenario(S)
        c = validate_scenario(scenario_from_dict(scenario_to_dict(S)))
        assert [x.as_dict() for x in a.checks] == [x.as_dict() for x in b.checks] == [x.as_dict() for x in c.checks]
        assert a.flags == c.flags


def test_maximal_strata(plane):
    assert [s.name for s in maximal_strata(plane.strata)] == ["open"]
    axes = [plane.stratum("xaxis"), plane.stratum("yaxis"), plane.stratum("origin")]
    assert [s.name for s in maximal_strata(axes)] == ["xaxis", "yaxis"]


def test_stratified_support_examples(cone):
    O_X = PresentedModule.cyclic(cone.variety_ideal)
    res = stratified_support_check(O_X, cone)
    assert res.stratified and res.decomposition == ("open",)

    line = PresentedModule.cyclic(I("x", "y"))
    assert not stratified_support_check(line, cone).stratified

    zero = PresentedModule(3, 1, Matrix.identity(3, 1))
    res = stratified_support_check(zero, cone)
    assert res.stratified and res.decomposition == ()

    k0 = PresentedModule.cyclic(I("x", "y", "z"))
    assert stratified_support_check(k0, cone).decomposition == ("origin",)


def test_union_of_axes_is_stratified(plane):
    M = PresentedModule.cyclic(I("x*y", names=plane.variables))
    res = stratified_support_check(M, plane)
    assert res.stratified and set(res.decomposition) == {"xaxis", "yaxis"}
    diagonal = PresentedModule.cyclic(I("x-y", names=plane.variables))
    assert not stratified_support_check(diagonal, plane).stratified


@pytest.mark.parametrize("shift", [-1, 0, 1])
def test_split_acyclic_summands_do_not_change_the_verdict(bundled, shift):
    for S in bundled.values():
        for name, C in S.complexes.items():
            padded = direct_sum([C, split_acyclic(S.nvars, C.lo + shift)])
            for k in C.degrees():
                if cohomology_is_zero(C, k):
                    assert cohomology_is_zero(padded, k)
                    continue
                a = stratified_support_check(cohomology_module(C, k), S)
                b = stratified_support_check(cohomology_module(padded, k), S)
                assert a == b, (name, k)

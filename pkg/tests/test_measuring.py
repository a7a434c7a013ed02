import dataclasses
import random

import pytest

from pervcoh.measuring import (
    ConstructionError,
    MeasuringCandidate,
    MeasuringError,
    construct_measuring,
    family_coverage,
    is_measuring,
    is_measuring_family,
)
from pervcoh.polycore import MINUS_INFINITY, Ideal, dimension, same_radical
from pervcoh.stratspace import Perversity
from pervcoh.verdicts import PreconditionError

from .helpers import I, P

XY = ("x", "y")


def candidate(S, name, gens, cuts):
    ideal = Ideal(S.nvars, tuple(P(g, S.variables) for g in gens))
    return MeasuringCandidate(name, ideal, tuple((P(f, S.variables), s) for f, s in cuts))


def with_p(S, *values):
    return dataclasses.replace(S, perversity=Perversity(dict(enumerate(values))))


def test_is_measuring_examples(cone):
    assert is_measuring(cone.measuring["line"], cone).result

    flat = with_p(cone, 0, 0, 0)
    whole = MeasuringCandidate("X", cone.variety_ideal, ())
    assert is_measuring(whole, flat).result

    origin = candidate(cone, "origin", ["x", "y", "z"], [("y", 0), ("z", 1)])
    v = is_measuring(origin, cone)
    assert not v.result
    w = v.witnesses[0]
    assert (w.stratum, w.computed, w.required) == ("open", 0, 1)


def test_cutting_must_cut_out_z(cone):
    wrong = candidate(cone, "w", ["x", "y", "x^2+y*z"], [("z", 0)])
    v = is_measuring(wrong, cone)
    assert not v.result and "does not cut out" in v.witnesses[0].note


def test_missing_cutting_data(cone):
    bare = candidate(cone, "bare", ["x", "y", "x^2+y*z"], [])
    with pytest.raises(MeasuringError, match="needs 1 cutting"):
        is_measuring(bare, cone)


def test_inadmissible_perversity(cone):
    with pytest.raises(PreconditionError):
        is_measuring(cone.measuring["line"], with_p(cone, 0, -2, -1))
    with pytest.raises(PreconditionError):
        construct_measuring(with_p(cone, 0, 1, 0))


def test_family_examples(bundled, line):
    for S in bundled.values():
        Z = construct_measuring(S, seed=1)
        assert is_measuring_family([Z], S).result
    v = is_measuring_family([], line)
    assert not v.result and {w.stratum for w in v.witnesses} == {"origin", "open"}
    away = candidate(line, "one", ["x-1"], [("x-1", 0)])
    assert is_measuring(away, line).result
    v = is_measuring_family([away], line)
    assert not v.result
    assert [w.stratum for w in v.witnesses] == ["origin"]
    assert family_coverage([away], line) == ["origin"]


def test_construct_plane_with_pool(plane):
    pool = [P("x+y", XY), P("x*y", XY)]
    Z = construct_measuring(plane, pool=pool)
    assert Z.cutting == ((pool[0], 0), (pool[1], 1))
    assert same_radical(Z.ideal, I("x", "y", names=XY))


def test_construct_flat_perversity_takes_x(cone):
    flat = with_p(cone, 0, 0, 0)
    Z = construct_measuring(flat, max_attempts=0)
    assert Z.cutting == ()
    assert same_radical(Z.ideal, cone.variety_ideal)


def test_construct_cone_with_pool(cone):
    Z = construct_measuring(cone, pool=[P("y")])
    assert [(f, s) for f, s in Z.cutting] == [(P("y"), 0)]
    assert same_radical(Z.ideal, I("x", "y"))


def test_construct_failure_reports_step(cone):
    with pytest.raises(ConstructionError) as err:
        construct_measuring(cone, pool=[P("x-1")], max_attempts=0)
    assert err.value.step == 0 and "origin" in err.value.condition and err.value.attempts == 1


def test_construct_is_deterministic(plane):
    a = construct_measuring(plane, seed=7)
    b = construct_measuring(plane, seed=7)
    assert a == b


def random_admissible(rng, top):
    """p(0) = 0 and each step drops by 0 or 1."""
    values = [0]
    for _ in range(top):
        values.append(values[-1] - rng.randint(0, 1))
    return values


def _range_arithmetic(Z, S):
    dims = {x.name: dimension(x.ideal + Z.ideal) for x in S.strata}
    for x in S.strata:
        for y in S.strata:
            if y.declared_dim > x.declared_dim:
                continue
            dx, dy = dims[x.name], dims[y.name]
            if dx == MINUS_INFINITY or dy == MINUS_INFINITY:
                continue
            assert dy <= dx
            assert dx - dy <= x.declared_dim - y.declared_dim


@pytest.mark.parametrize("seed", range(24))
def test_constructor_soundness_on_random_perversities(bundled, seed):
    rng = random.Random(seed)
    base = bundled[sorted(bundled)[seed % 3]]
    S = with_p(base, *random_admissible(rng, base.dim))
    Z = construct_measuring(S, seed=seed)
    assert is_measuring(Z, S).result
    assert is_measuring_family([Z], S).result
    assert len(Z.cutting) == -S.perversity(S.dim)
    _range_arithmetic(Z, S)


def test_range_arithmetic_on_bundled_families(bundled):
    for S in bundled.values():
        for Z in S.measuring.values():
            _range_arithmetic(Z, S)

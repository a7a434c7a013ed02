import random

import pytest

from pervcoh.homcx import (
    DualizingData,
    cohomology_is_zero,
    cohomology_module,
    dualize,
    ext_colimit_oracle,
    least_nonvanishing_degree,
    local_cohomology_min_degree,
    support_dimension,
    validate_complex,
)
from pervcoh.polycore import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    FreeComplex,
    Ideal,
    Matrix,
    PresentedModule,
    annihilator,
    free_resolution,
    same_radical,
    split_acyclic,
)

from .helpers import I, P, random_complex

X = ("x",)
XY = ("x", "y")


def koszul_xy():
    x, y = P("x", XY), P("y", XY)
    return FreeComplex(2, -2, 0, {-2: 1, -1: 2, 0: 1}, {
        -2: Matrix.from_rows([[-y], [x]], 2),
        -1: Matrix.from_rows([[x, y]], 2),
    })


def structure(names, *texts):
    return free_resolution(PresentedModule.cyclic(Ideal(len(names), tuple(P(t, names) for t in texts))))


def test_validate_examples():
    assert validate_complex(koszul_xy()) is None
    assert validate_complex(FreeComplex.single(2, 3)) is None
    one = Matrix.identity(2, 1)
    bad = FreeComplex(2, 0, 2, {0: 1, 1: 1, 2: 1}, {0: one, 1: one})
    v = validate_complex(bad)
    assert v is not None and v.kind == "composite" and v.degree == 0 and v.entry == (0, 0)
    wrong_shape = FreeComplex(2, 0, 1, {0: 2, 1: 1}, {0: Matrix.identity(2, 1)})
    assert validate_complex(wrong_shape).kind == "shape"


def test_cohomology_examples():
    K = koszul_xy()
    assert cohomology_is_zero(K, -2) and cohomology_is_zero(K, -1)
    H0 = cohomology_module(K, 0)
    assert same_radical(annihilator(H0), I("x", "y", names=XY))
    assert annihilator(H0).contains_ideal(I("x", "y", names=XY))

    free = FreeComplex(2, 0, 1, {0: 2, 1: 3})
    for k in (0, 1):
        assert annihilator(cohomology_module(free, k)).is_zero()
    ident = FreeComplex(2, 0, 1, {0: 1, 1: 1}, {0: Matrix.identity(2, 1)})
    assert cohomology_is_zero(ident, 0) and cohomology_is_zero(ident, 1)


def test_dualize_examples():
    D = dualize(FreeComplex.single(1, 1, 0), DualizingData(1))
    assert (D.lo, D.hi, D.rank(-1)) == (-1, -1, 1)

    C = structure(("x", "y", "z"), "x^2+y*z")
    assert (C.lo, C.hi) == (-1, 0)
    D = dualize(C, DualizingData(3))
    nonzero = [k for k in D.degrees() if not cohomology_is_zero(D, k)]
    assert nonzero == [-2]
    H = cohomology_module(D, -2)
    assert annihilator(H).groebner() == [P("x^2+y*z")]
    # cyclic with the quadric as its only relation
    assert H.ambient_rank == 1
    assert support_dimension(H) == 2


@pytest.mark.parametrize("seed", range(20))
def test_dualize_is_an_involution(seed):
    C = random_complex(seed)
    assert validate_complex(C) is None
    dual = DualizingData(C.nvars)
    D = dualize(C, dual)
    assert validate_complex(D) is None
    assert dualize(D, dual) == C


@pytest.mark.parametrize("seed", range(12))
def test_shift_moves_cohomology(seed):
    C = random_complex(seed)
    s = random.Random(seed).randint(-3, 3)
    Cs = C.shift(s)
    assert validate_complex(Cs) is None
    for k in C.degrees():
        z = cohomology_is_zero(C, k)
        assert z == cohomology_is_zero(Cs, k - s)
        if not z:
            assert support_dimension(cohomology_module(C, k)) == support_dimension(cohomology_module(Cs, k - s))


def test_support_dimension_examples():
    zero = PresentedModule(2, 1, Matrix.identity(2, 1))
    assert support_dimension(zero) == MINUS_INFINITY
    M = PresentedModule.cyclic(I("x", names=XY))
    assert support_dimension(M, I("y", names=XY)) == 0
    assert support_dimension(M, I("x-1", names=XY)) == MINUS_INFINITY


def test_local_cohomology_min_degree_examples():
    assert local_cohomology_min_degree(I("x", names=X), FreeComplex.single(1, 1), DualizingData(1)) == 1
    acyclic = split_acyclic(2, 0)
    assert local_cohomology_min_degree(I("x", names=XY), acyclic, DualizingData(2)) == PLUS_INFINITY
    cone = structure(("x", "y", "z"), "x^2+y*z")
    assert local_cohomology_min_degree(I("x", "y"), cone, DualizingData(3)) == 1
    # a skyscraper has all of its local cohomology in degree 0
    k0 = structure(("x", "y", "z"), "x", "y", "z")
    assert local_cohomology_min_degree(I("x", "y"), k0, DualizingData(3)) == 0
    # Z disjoint from the support
    assert local_cohomology_min_degree(I("x-1"), k0, DualizingData(3)) == PLUS_INFINITY


def test_oracle_examples():
    O1 = FreeComplex.single(1, 1)
    v = ext_colimit_oracle([P("x", X)], O1, 0, 4)
    assert v.status == "vanishing_up_to_t_max" and v.nonzero_stages == ()
    assert ext_colimit_oracle([P("x", X)], O1, 1, 4).status == "nonvanishing_detected"

    O2 = FreeComplex.single(2, 1)
    for i in range(0, 4):
        assert ext_colimit_oracle([P("1", XY)], O2, i, 3).status == "vanishing_up_to_t_max"
    J = [P("x", XY), P("y", XY)]
    assert ext_colimit_oracle(J, O2, 0, 4).status == "vanishing_up_to_t_max"
    assert ext_colimit_oracle(J, O2, 1, 4).status == "vanishing_up_to_t_max"
    v = ext_colimit_oracle(J, O2, 2, 4)
    assert v.status == "nonvanishing_detected" and v.witness_t is not None
    with pytest.raises(ValueError):
        ext_colimit_oracle(J, O2, 2, 0)


def test_oracle_single_stage_is_inconclusive():
    O1 = FreeComplex.single(1, 1)
    v = ext_colimit_oracle([P("x", X)], O1, 1, 1)
    assert v.status == "inconclusive" and v.nonzero_stages == (1,)


def test_oracle_torsion_module():
    # S/(x) over k[x] is its own local cohomology at the origin: degree 0 only
    k0 = structure(X, "x")
    assert ext_colimit_oracle([P("x", X)], k0, 0, 3).status == "nonvanishing_detected"
    assert ext_colimit_oracle([P("x", X)], k0, 1, 3).status == "vanishing_up_to_t_max"


ORACLE_CASES = [
    (X, ["x"], []),
    (XY, ["x", "y"], []),
    (XY, ["x"], []),
    (("x", "y", "z"), ["x", "y"], ["x^2+y*z"]),
    (("x", "y", "z"), ["x", "y", "z"], ["x^2+y*z"]),
    (XY, ["x", "y"], ["y"]),
    (X, ["x"], ["x"]),
]


@pytest.mark.parametrize("names,J,rel", ORACLE_CASES)
def test_min_degree_agrees_with_oracle(names, J, rel):
    n = len(names)
    C = structure(names, *rel) if rel else FreeComplex.single(n, 1)
    Z = Ideal(n, tuple(P(t, names) for t in J))
    n0 = local_cohomology_min_degree(Z, C, DualizingData(n))
    assert least_nonvanishing_degree(Z.generators, C, 3) == n0


@pytest.mark.parametrize("s", [-1, 1, 2])
def test_min_degree_tracks_shifts(s):
    C = structure(XY, "y")
    Z = I("x", "y", names=XY)
    n0 = local_cohomology_min_degree(Z, C, DualizingData(2))
    assert n0 == 1
    assert local_cohomology_min_degree(Z, C.shift(s), DualizingData(2)) == n0 - s
    assert least_nonvanishing_degree(Z.generators, C.shift(s), 3) == n0 - s


@pytest.mark.parametrize("names,J,rel", ORACLE_CASES)
def test_grothendieck_vanishing(names, J, rel):
    n = len(names)
    C = structure(names, *rel) if rel else FreeComplex.single(n, 1)
    fs = [P(t, names) for t in J]
    for i in range(len(fs) + 1, len(fs) + 3):
        assert ext_colimit_oracle(fs, C, i, 3).status == "vanishing_up_to_t_max"

"""Shared builders and strategies for the test suite."""

import random
from pathlib import Path

from hypothesis import strategies as st

from pervcoh.polycore import (
    FreeComplex,
    Ideal,
    Matrix,
    Polynomial,
    PresentedModule,
    direct_sum,
    free_resolution,
    parse_poly,
    split_acyclic,
)

FIXTURES = Path(__file__).parent / "fixtures"
XYZ = ("x", "y", "z")


def P(text, names=XYZ):
    return parse_poly(text, names)


def I(*texts, names=XYZ):
    return Ideal(len(names), tuple(parse_poly(t, names) for t in texts))


def random_poly(rng, nvars, max_deg=3, max_terms=3, coeffs=(-2, -1, 1, 2)):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        exp = [0] * nvars
        for _ in range(d):
            exp[rng.randrange(nvars)] += 1
        terms[tuple(exp)] = rng.choice(coeffs)
    return Polynomial(nvars, terms)


def random_ideal(seed, nvars=3, max_deg=3, max_gens=3):
    rng = random.Random(seed)
    gens = []
    while len(gens) < rng.randint(1, max_gens):
        f = random_poly(rng, nvars, max_deg)
        if not f.is_zero():
            gens.append(f)
    return Ideal(nvars, tuple(gens))


@st.composite
def polynomials(draw, nvars=2, max_deg=3, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exp = tuple(draw(st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars)))
        terms[exp] = draw(st.integers(-3, 3))
    return Polynomial(nvars, terms)


def random_complex(seed):
    """A valid complex: a shifted resolution, a two-term map, or a sum of both."""
    rng = random.Random(seed)
    n = rng.choice([1, 2, 3])
    kind = rng.randrange(3)
    if kind == 0:
        C = free_resolution(PresentedModule.cyclic(random_ideal(seed, nvars=n, max_deg=2, max_gens=2)))
    else:
        a, b = rng.randint(1, 2), rng.randint(1, 2)
        rows = [[random_poly(rng, n, 2, 2) for _ in range(a)] for _ in range(b)]
        C = FreeComplex(n, 0, 1, {0: a, 1: b}, {0: Matrix.from_rows(rows, n, a)})
    if kind == 2:
        C = direct_sum([C, split_acyclic(n, rng.randint(-2, 1))])
    return C.shift(rng.randint(-2, 2))

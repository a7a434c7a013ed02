"""Measuring subvarieties: the membership checker and the inductive constructor."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .polycore import (
    MINUS_INFINITY,
    Ideal,
    Polynomial,
    dimension,
    product_ideal,
    same_radical,
)
from .stratspace import Scenario
from .verdicts import PervcohError, PreconditionError, Verdict, Witness


class MeasuringError(PervcohError):
    pass


class ConstructionError(PervcohError):
    def __init__(self, step: int, condition: str, attempts: int):
        super().__init__(f"no cutting function found at step {step} after {attempts} "
                         f"candidates; last violated condition: {condition}")
        self.step = step
        self.condition = condition
        self.attempts = attempts


@dataclass(frozen=True)
class MeasuringCandidate:
    """A closed subvariety V(ideal) with its ordered cutting functions.

    ``cutting`` holds (function, step) pairs; step is the induction step at
    which the function was introduced (or the user-declared order).
    """

    name: str
    ideal: Ideal
    cutting: Tuple[Tuple[Polynomial, int], ...] = ()

    @property
    def functions(self) -> List[Polynomial]:
        return [f for f, _ in self.cutting]


def _require_admissible(S: Scenario):
    p = S.perversity
    if not (p.monotone() and p.comonotone() and p.in_range()):
        raise PreconditionError("perversity must be monotone, comonotone and satisfy -n <= p(n) <= 0")


def is_measuring(Z: MeasuringCandidate, S: Scenario) -> Verdict:
    """Check the dimension and cutting conditions on every stratum closure Z meets."""
    _require_admissible(S)
    p = S.perversity
    w: List[Witness] = []

    lhs = Ideal(S.nvars, tuple(Z.functions)) + S.variety_ideal
    if not same_radical(lhs, Z.ideal):
        w.append(Witness(None, None, "V(I_Z)", "V(I_X + cutting)", "==", note="cutting data does not cut out Z"))
    if len(Z.cutting) > S.dim:
        w.append(Witness(None, None, len(Z.cutting), S.dim, "<=", note="too many cutting functions"))

    for x in S.strata:
        meet = x.ideal + Z.ideal
        d = dimension(meet)
        if d == MINUS_INFINITY:
            continue
        want = p(x.declared_dim) + x.declared_dim
        if d != want:
            w.append(Witness(x.name, None, d, want, "==", note="dim(closure ∩ Z)"))
        m = -p(x.declared_dim)
        if m > len(Z.cutting):
            raise MeasuringError(
                f"{Z.name}: stratum {x.name} needs {m} cutting functions, {len(Z.cutting)} given")
        local = x.ideal.plus(*Z.functions[:m])
        if not same_radical(local, meet):
            w.append(Witness(x.name, None, m, m, "==",
                             note=f"first {m} cutting functions do not cut closure ∩ Z up to radical"))
    return Verdict(not w, "measuring", w)


def family_coverage(members: Sequence[MeasuringCandidate], S: Scenario) -> List[str]:
    """Names of strata met by no member."""
    return [x.name for x in S.strata
            if not any(not (x.ideal + Z.ideal).is_unit() for Z in members)]


def is_measuring_family(members: Sequence[MeasuringCandidate], S: Scenario) -> Verdict:
    w: List[Witness] = []
    for Z in members:
        v = is_measuring(Z, S)
        if not v.result:
            w.append(Witness(None, None, False, True, "==", note=f"member {Z.name} is not measuring"))
    for name in family_coverage(members, S):
        w.append(Witness(name, None, 0, 1, ">=", note="stratum met by no member"))
    return Verdict(not w, "measuring_family", w)


# -- construction -----------------------------------------------------------


def _monomials_upto(n: int, d: int):
    for total in range(d + 1):
        for exp in itertools.product(range(total + 1), repeat=n):
            if sum(exp) == total:
                yield exp


def _candidate_space(S: Scenario, d: int, max_degree: int) -> List[Polynomial]:
    """Degree <= max_degree multiples of the product of {I_x : dim x <= d}."""
    n = S.nvars
    low = [x.ideal for x in S.strata if x.declared_dim <= d]
    prod = product_ideal(low, n)
    gens = [g for g in prod.generators if not g.is_zero()]
    space, seen = [], set()
    for g in gens:
        room = max_degree - g.degree()
        if room < 0:
            continue
        for exp in _monomials_upto(n, room):
            h = g.mul_term(exp, 1)
            if h not in seen:
                seen.add(h)
                space.append(h)
    if not space:
        space = gens
    return space


def _step_violation(f: Polynomial, S: Scenario, d: int, IZ: Ideal) -> Optional[str]:
    """None if f is an admissible cut at step d -> d+1, else the violated condition."""
    if f.is_zero():
        return "f is zero"
    for x in S.strata:
        if x.declared_dim <= d and not x.ideal.contains(f):
            return f"f does not vanish on the closure of {x.name}"
    for x in S.strata:
        if x.declared_dim <= d:
            continue
        before = dimension(x.ideal + IZ)
        after_ideal = (x.ideal + IZ).plus(f)
        if after_ideal.is_unit():
            return f"V(f) misses closure({x.name}) ∩ Z_{d}"
        if dimension(after_ideal) != before - 1:
            return f"dimension does not drop on closure({x.name}) ∩ Z_{d}"
    return None


def construct_measuring(S: Scenario, seed: int = 0, pool: Sequence[Polynomial] = (),
                        max_degree: int = 2, max_attempts: int = 200,
                        name: str = "constructed") -> MeasuringCandidate:
    """Build Z = Z_{dim X} by successive cuts Z_{d+1} = Z_d ∩ V(f).

    At each step where the perversity drops, the supplied pool is tried in
    order, then up to ``max_attempts`` seeded random combinations with
    coefficients in {-2..2}.
    """
    _require_admissible(S)
    p = S.perversity
    rng = random.Random(seed)
    IZ = S.variety_ideal
    cutting: List[Tuple[Polynomial, int]] = []
    for d in range(-1, S.dim):
        if p(d + 1) == p(d):
            continue
        chosen = None
        last = "no candidates"
        tried = 0
        for f in pool:
            tried += 1
            why = _step_violation(f, S, d, IZ)
            if why is None:
                chosen = f
                break
            last = why
        if chosen is None:
            space = _candidate_space(S, d, max_degree)
            for _ in range(max_attempts):
                tried += 1
                coeffs = [rng.randint(-2, 2) for _ in space]
                f = Polynomial.zero(S.nvars)
                for c, g in zip(coeffs, space):
                    if c:
                        f = f + g * c
                why = _step_violation(f, S, d, IZ)
                if why is None:
                    chosen = f
                    break
                last = why
        if chosen is None:
            raise ConstructionError(d, last, tried)
        cutting.append((chosen, d))
        IZ = IZ.plus(chosen)
    Z = MeasuringCandidate(name, IZ, tuple(cutting))
    check = is_measuring(Z, S)
    if not check.result:
        raise ConstructionError(S.dim, f"constructed candidate failed verification: {check.witnesses[0]}", 0)
    return Z

"""Membership tests for the two halves of the perverse t-structure, and the
local-cohomology concentration test along a measuring subvariety.

The p-dependent side (check_le0 / check_ge0) reads the perversity table and
the stratum ideals.  The measuring side (measuring_concentration) never
touches the perversity: it only sees the candidate ideal I_Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from .homcx import (
    cohomology_is_zero,
    cohomology_module,
    dualize,
    local_cohomology_min_degree,
    validate_complex,
)
from .polycore import MINUS_INFINITY, FreeComplex, Ideal, PresentedModule, annihilator, dimension
from .stratspace import Scenario, stratified_support_check
from .verdicts import InternalConsistencyError, PreconditionError, Verdict, Witness


@dataclass(frozen=True)
class CohomologySheaf:
    degree: int
    module: PresentedModule
    ann: Ideal
    dim: float  # dimension of the support


def nonzero_cohomology(C: FreeComplex) -> List[CohomologySheaf]:
    """The nonzero cohomology modules of C with annihilators and support dimensions."""
    out = []
    for k in C.degrees():
        if cohomology_is_zero(C, k):
            continue
        M = cohomology_module(C, k)
        ann = annihilator(M)
        out.append(CohomologySheaf(k, M, ann, dimension(ann)))
    return out


def require_stratified(C: FreeComplex, S: Scenario, label: str = "F") -> List[CohomologySheaf]:
    """Validate C and check every cohomology support is a union of stratum closures."""
    bad = validate_complex(C)
    if bad is not None:
        raise PreconditionError(f"{label} is not a complex: {bad.message}")
    sheaves = nonzero_cohomology(C)
    for h in sheaves:
        res = stratified_support_check(h.module, S, h.ann)
        if not res.stratified:
            raise PreconditionError(
                f"H^{h.degree}({label}) has support that is not a union of stratum closures")
    return sheaves


def _stratum_of_dim(h: CohomologySheaf, S: Scenario) -> Optional[str]:
    res = stratified_support_check(h.module, S, h.ann)
    for name in res.decomposition:
        if S.stratum(name).declared_dim == h.dim:
            return name
    return None


def _order(S: Scenario):
    index = {s.name: i for i, s in enumerate(S.strata)}

    def key(w: Witness):
        return (index.get(w.stratum, -1), w.degree if w.degree is not None else 0)

    return key


def check_le0(F: FreeComplex, S: Scenario, sheaves: Optional[List[CohomologySheaf]] = None) -> Verdict:
    """p(dim supp H^k F) >= k for every k, cross-checked against the stalk route."""
    if sheaves is None:
        sheaves = require_stratified(F, S)
    p = S.perversity

    support_w = []
    for h in sheaves:
        bound = p(int(h.dim))
        if h.degree > bound:
            support_w.append(Witness(_stratum_of_dim(h, S), h.degree, h.degree, bound, "<=",
                                     note=f"dim supp = {int(h.dim)}"))

    stalk = check_le0_stalk(F, S, sheaves)
    if bool(support_w) == stalk.result:
        raise InternalConsistencyError(
            f"le0 routes disagree: support route {not support_w}, stalk route {stalk.result}")
    support_w.sort(key=_order(S))
    return Verdict(not support_w, "le0:support_dimension", support_w)


def check_le0_stalk(F: FreeComplex, S: Scenario, sheaves: Optional[List[CohomologySheaf]] = None) -> Verdict:
    """Stalk route alone: max{k : x in supp H^k F} <= p(x) for every stratum x."""
    if sheaves is None:
        sheaves = require_stratified(F, S)
    p = S.perversity
    w = []
    for x in S.strata:
        ks = [h.degree for h in sheaves if x.ideal.contains_ideal(h.ann)]
        if ks and max(ks) > p(x.declared_dim):
            w.append(Witness(x.name, max(ks), max(ks), p(x.declared_dim), "<="))
    return Verdict(not w, "le0:stalk", w)


def check_ge0(F: FreeComplex, S: Scenario, dual_sheaves: Optional[List[CohomologySheaf]] = None) -> Verdict:
    """dim(closure(x) ∩ supp H^k(D F)) <= -p(x) - k for every stratum x and degree k."""
    if dual_sheaves is None:
        require_stratified(F, S)
        dual_sheaves = require_stratified(dualize(F, S.dualizing), S, "DF")
    p = S.perversity
    w = []
    for x in S.strata:
        for h in dual_sheaves:
            sd = dimension(h.ann + x.ideal)
            bound = -p(x.declared_dim) - h.degree
            if sd > bound:
                w.append(Witness(x.name, h.degree, sd, bound, "<="))
    return Verdict(not w, "ge0:dual_support", w)


def is_perverse(F: FreeComplex, S: Scenario) -> Verdict:
    sheaves = require_stratified(F, S)
    dual_sheaves = require_stratified(dualize(F, S.dualizing), S, "DF")
    le = check_le0(F, S, sheaves)
    ge = check_ge0(F, S, dual_sheaves)
    return Verdict(le.result and ge.result, "perverse",
                   [Witness(w.stratum, w.degree, w.computed, w.required, w.relation, "le0" + (": " + w.note if w.note else ""))
                    for w in le.witnesses]
                   + [Witness(w.stratum, w.degree, w.computed, w.required, w.relation, "ge0")
                      for w in ge.witnesses])


@dataclass
class Concentration:
    ge0: Verdict
    le0: Verdict
    coverage_violation: bool = False
    min_degree: float = 0

    @property
    def concentrated(self) -> bool:
        return self.ge0.result and self.le0.result

    def as_dict(self) -> Dict:
        from .verdicts import jsonable

        return {"ge0": self.ge0.as_dict(), "le0": self.le0.as_dict(),
                "coverage_violation": self.coverage_violation,
                "min_degree": jsonable(self.min_degree)}


def measuring_concentration(F: FreeComplex, Z, S: Scenario,
                            sheaves: Optional[List[CohomologySheaf]] = None) -> Concentration:
    """Is the local cohomology of F along V(Z) concentrated in degree 0?

    ge0: the local-cohomology lower bound is >= 0.
    le0: for each nonzero H^k F meeting V(Z), the drop
         dim supp H^k F - dim(supp H^k F ∩ V(Z)) is at most -k.
    Neither side reads the perversity.  Z is an Ideal or anything with an
    ``ideal`` attribute.
    """
    Z = getattr(Z, "ideal", Z)
    if sheaves is None:
        sheaves = require_stratified(F, S)

    dual = S.dualizing
    D = dualize(F, dual)
    ge_w = []
    for h in nonzero_cohomology(D):
        sd = dimension(h.ann + Z)
        if sd > -h.degree:
            ge_w.append(Witness(None, h.degree, sd, -h.degree, "<="))
    n0 = local_cohomology_min_degree(Z, F, dual)
    if (n0 >= 0) != (not ge_w):
        raise InternalConsistencyError("ge0 witnesses disagree with the local-cohomology bound")

    le_w = []
    met = False
    for h in sheaves:
        sz = dimension(h.ann + Z)
        if sz == MINUS_INFINITY:
            continue
        met = True
        drop = h.dim - sz
        if drop > -h.degree:
            le_w.append(Witness(None, h.degree, drop, -h.degree, "<=", note="codimension drop"))
    coverage = bool(sheaves) and not met
    return Concentration(Verdict(not ge_w, "ge0:local_cohomology_bound", ge_w),
                         Verdict(not le_w, "le0:codimension_drop", le_w),
                         coverage, n0)

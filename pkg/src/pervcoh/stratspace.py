"""Stratified affine varieties and perversity tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .homcx import DualizingData
from .polycore import (
    MINUS_INFINITY,
    FreeComplex,
    Ideal,
    PresentedModule,
    annihilator,
    dimension,
    format_poly,
    intersect_ideals,
    normal_form,
    product_ideal,
    radical_contains,
    same_radical,
)
from .verdicts import CheckRecord, PervcohError


class PerversityError(PervcohError):
    """A perversity value was requested outside the declared table."""


@dataclass(frozen=True)
class Stratum:
    name: str
    ideal: Ideal
    declared_dim: int


@dataclass(frozen=True)
class Perversity:
    table: Dict[int, int]

    def __call__(self, d: int) -> int:
        if d == -1:
            return 0
        try:
            return self.table[d]
        except KeyError:
            raise PerversityError(f"perversity undefined at dimension {d}") from None

    def dual(self, d: int) -> int:
        return -d - self(d)

    def _dims(self) -> List[int]:
        return sorted(self.table)

    def monotone(self) -> bool:
        ds = self._dims()
        return all(self.table[a] >= self.table[b] for a, b in zip(ds, ds[1:]))

    def comonotone(self) -> bool:
        ds = self._dims()
        return all(self.dual(a) >= self.dual(b) for a, b in zip(ds, ds[1:]))

    def strictly_monotone(self, dims: Sequence[int]) -> bool:
        ds = sorted(set(dims))
        return all(self(a) > self(b) for i, a in enumerate(ds) for b in ds[i + 1:])

    def strictly_comonotone(self, dims: Sequence[int]) -> bool:
        ds = sorted(set(dims))
        return all(self.dual(a) > self.dual(b) for i, a in enumerate(ds) for b in ds[i + 1:])

    def in_range(self) -> bool:
        return all(-d <= v <= 0 for d, v in self.table.items())

    def flags(self, dims: Sequence[int]) -> Dict[str, bool]:
        return {
            "monotone": self.monotone(),
            "strictly_monotone": self.strictly_monotone(dims),
            "comonotone": self.comonotone(),
            "strictly_comonotone": self.strictly_comonotone(dims),
            "in_range": self.in_range(),
        }

    def first_monotone_violation(self) -> Optional[Tuple[int, int]]:
        ds = self._dims()
        for a, b in zip(ds, ds[1:]):
            if self.table[a] < self.table[b]:
                return a, b
        return None

    def first_comonotone_violation(self) -> Optional[Tuple[int, int]]:
        ds = self._dims()
        for a, b in zip(ds, ds[1:]):
            if self.dual(a) < self.dual(b):
                return a, b
        return None


@dataclass(frozen=True)
class Scenario:
    variables: Tuple[str, ...]
    variety_ideal: Ideal
    strata: Tuple[Stratum, ...]
    perversity: Perversity
    complexes: Dict[str, FreeComplex] = field(default_factory=dict)
    measuring: Dict[str, object] = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def dualizing(self) -> DualizingData:
        return DualizingData(len(self.variables))

    @property
    def dim(self) -> int:
        return max((s.declared_dim for s in self.strata), default=0)

    def stratum(self, name: str) -> Stratum:
        for s in self.strata:
            if s.name == name:
                return s
        raise KeyError(name)

    def fmt(self, p) -> str:
        return format_poly(p, self.variables)


@dataclass
class ValidationReport:
    checks: List[CheckRecord]
    flags: Dict[str, bool]
    assumptions: List[str]

    @property
    def ok(self) -> bool:
        return all(c.result for c in self.checks)


ASSUMPTIONS = [
    "stratum ideals are trusted to be prime; primality is not verified",
    "points of Xtop are restricted to the generic points of the supplied strata",
]


def maximal_strata(strata: Sequence[Stratum]) -> List[Stratum]:
    """Strata whose closure is not contained in the closure of another."""
    out = []
    for i, s in enumerate(strata):
        dominated = False
        for j, t in enumerate(strata):
            if i == j:
                continue
            # closure(s) ⊆ closure(t)  <=>  I_t ⊆ I_s (prime ideals)
            if s.ideal.contains_ideal(t.ideal):
                if not t.ideal.contains_ideal(s.ideal) or j < i:
                    dominated = True
                    break
        if not dominated:
            out.append(s)
    return out


def validate_scenario(S: Scenario) -> ValidationReport:
    checks: List[CheckRecord] = []
    names = [s.name for s in S.strata]
    dupes = sorted({n for n in names if names.count(n) > 1})
    checks.append(CheckRecord("distinct_stratum_names", not dupes,
                              [{"name": n} for n in dupes]))

    for s in S.strata:
        computed = dimension(s.ideal)
        checks.append(CheckRecord(
            f"stratum_dim:{s.name}", computed == s.declared_dim,
            [] if computed == s.declared_dim else
            [{"stratum": s.name, "computed": computed, "declared": s.declared_dim}]))
        bad = [g for g in S.variety_ideal.generators if not normal_form(g, s.ideal).is_zero()]
        checks.append(CheckRecord(
            f"stratum_in_variety:{s.name}", not bad,
            [{"stratum": s.name, "generator": S.fmt(g)} for g in bad[:1]]))

    dim_x = dimension(S.variety_ideal)
    declared = max((s.declared_dim for s in S.strata), default=MINUS_INFINITY)
    checks.append(CheckRecord("variety_dim", dim_x == declared,
                              [] if dim_x == declared else [{"computed": dim_x, "declared": declared}]))

    tops = maximal_strata(S.strata)
    union = intersect_ideals([t.ideal for t in tops], S.nvars)
    covered = same_radical(union, S.variety_ideal)
    checks.append(CheckRecord("strata_cover_variety", covered,
                              [] if covered else [{"maximal_strata": [t.name for t in tops]}]))

    missing = [d for d in range(0, S.dim + 1) if d not in S.perversity.table]
    extra = [d for d in S.perversity.table if d < 0 or d > S.dim]
    checks.append(CheckRecord("perversity_complete", not missing and not extra,
                              [{"missing": missing, "extra": extra}] if missing or extra else []))

    mv = S.perversity.first_monotone_violation()
    checks.append(CheckRecord("perversity_monotone", mv is None,
                              [] if mv is None else
                              [{"dims": list(mv), "values": [S.perversity(mv[0]), S.perversity(mv[1])]}]))
    cv = S.perversity.first_comonotone_violation()
    checks.append(CheckRecord("perversity_comonotone", cv is None,
                              [] if cv is None else
                              [{"dims": list(cv), "dual_values": [S.perversity.dual(cv[0]),
                                                                  S.perversity.dual(cv[1])]}]))

    flags = S.perversity.flags([s.declared_dim for s in S.strata])
    return ValidationReport(checks, flags, list(ASSUMPTIONS))


@dataclass(frozen=True)
class StratifiedSupport:
    stratified: bool
    decomposition: Tuple[str, ...]


def strata_in_support(ann: Ideal, S: Scenario) -> List[Stratum]:
    """Strata whose closure lies in V(ann), i.e. ann ⊆ I_x."""
    return [s for s in S.strata if s.ideal.contains_ideal(ann)]


def stratified_support_check(M: PresentedModule, S: Scenario, ann: Optional[Ideal] = None) -> StratifiedSupport:
    """Is supp M a union of stratum closures?  Returns the maximal ones."""
    if ann is None:
        ann = annihilator(M)
    if ann.is_unit():
        return StratifiedSupport(True, ())
    inside = maximal_strata(strata_in_support(ann, S))
    prod = product_ideal([s.ideal for s in inside], S.nvars)
    ok = bool(inside) and radical_contains(ann, prod)
    return StratifiedSupport(ok, tuple(s.name for s in inside) if ok else ())

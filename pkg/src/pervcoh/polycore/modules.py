"""Finitely presented modules, bounded free complexes, resolutions, annihilators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .groebner import (
    FreeElement,
    Ideal,
    Submodule,
    intersect_ideals,
    minimize_generators,
    module_quotient,
    syzygy_module,
    unit_ideal,
)
from .matrix import Matrix


@dataclass(frozen=True)
class PresentedModule:
    """The cokernel of ``matrix``: S^ncols -> S^ambient_rank."""

    nvars: int
    ambient_rank: int
    matrix: Matrix
    provenance: str = ""

    def __post_init__(self):
        if self.matrix.nrows != self.ambient_rank:
            raise ValueError("presentation rows must equal the ambient rank")

    @classmethod
    def cyclic(cls, ideal: Ideal, provenance: str = "") -> "PresentedModule":
        """S/I."""
        gens = [g for g in ideal.generators]
        return cls(ideal.nvars, 1, Matrix.from_rows([gens], ideal.nvars, len(gens)), provenance)

    @classmethod
    def free(cls, nvars: int, rank: int, provenance: str = "") -> "PresentedModule":
        return cls(nvars, rank, Matrix.zeros(nvars, rank, 0), provenance)

    def relations(self) -> Submodule:
        return Submodule(self.nvars, self.ambient_rank, tuple(self.matrix.columns()))

    def is_zero(self) -> bool:
        return self.ambient_rank == 0 or self.relations().is_whole()


@dataclass(frozen=True)
class FreeComplex:
    """A bounded cochain complex of free S-modules.

    ``ranks[k]`` is the rank of C^k for lo <= k <= hi, and ``differentials[k]``
    is the ranks[k+1] x ranks[k] matrix of d^k: C^k -> C^{k+1}.
    """

    nvars: int
    lo: int
    hi: int
    ranks: Dict[int, int]
    differentials: Dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("empty degree range")
        ranks = {k: int(self.ranks.get(k, 0)) for k in range(self.lo, self.hi + 1)}
        if any(r < 0 for r in ranks.values()):
            raise ValueError("negative rank")
        object.__setattr__(self, "ranks", ranks)
        diffs = {}
        for k in range(self.lo, self.hi):
            d = self.differentials.get(k)
            if d is None:
                d = Matrix.zeros(self.nvars, ranks[k + 1], ranks[k])
            diffs[k] = d
        extra = set(self.differentials) - set(diffs)
        if extra:
            raise ValueError(f"differentials outside the degree range: {sorted(extra)}")
        object.__setattr__(self, "differentials", diffs)

    @classmethod
    def zero(cls, nvars: int) -> "FreeComplex":
        return cls(nvars, 0, 0, {0: 0})

    @classmethod
    def single(cls, nvars: int, rank: int, degree: int = 0) -> "FreeComplex":
        return cls(nvars, degree, degree, {degree: rank})

    def rank(self, k: int) -> int:
        return self.ranks.get(k, 0)

    def d(self, k: int) -> Matrix:
        """d^k, the zero matrix outside the stored range."""
        if k in self.differentials:
            return self.differentials[k]
        return Matrix.zeros(self.nvars, self.rank(k + 1), self.rank(k))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.ranks.values())

    def shift(self, s: int) -> "FreeComplex":
        """C[s], with (C[s])^k = C^{k+s} and differential (-1)^s d."""
        sign = -1 if s % 2 else 1
        return FreeComplex(
            self.nvars,
            self.lo - s,
            self.hi - s,
            {k - s: r for k, r in self.ranks.items()},
            {k - s: (m.scale(sign) if sign < 0 else m) for k, m in self.differentials.items()},
        )

    def trimmed(self) -> "FreeComplex":
        """Drop zero-rank terms at both ends."""
        nz = [k for k, r in self.ranks.items() if r]
        if not nz:
            return FreeComplex.zero(self.nvars)
        lo, hi = min(nz), max(nz)
        return FreeComplex(self.nvars, lo, hi, {k: self.ranks[k] for k in range(lo, hi + 1)},
                           {k: self.differentials[k] for k in range(lo, hi)})


def direct_sum(complexes: List[FreeComplex]) -> FreeComplex:
    from .matrix import block_diagonal

    n = complexes[0].nvars
    lo = min(c.lo for c in complexes)
    hi = max(c.hi for c in complexes)
    ranks = {k: sum(c.rank(k) for c in complexes) for k in range(lo, hi + 1)}
    diffs = {k: block_diagonal([c.d(k) for c in complexes], n) for k in range(lo, hi)}
    return FreeComplex(n, lo, hi, ranks, diffs)


def split_acyclic(nvars: int, degree: int) -> FreeComplex:
    """[S --1--> S] in degrees degree, degree+1."""
    return FreeComplex(nvars, degree, degree + 1, {degree: 1, degree + 1: 1},
                       {degree: Matrix.identity(nvars, 1)})


# -- presentations ----------------------------------------------------------------


def prune_presentation(M: PresentedModule) -> PresentedModule:
    """Simplify coker(A) by eliminating generators killed by a unit relation.

    A relation column with a nonzero constant in row i expresses generator i
    through the others; the row and column are removed after clearing.
    """
    n = M.nvars
    cols = [list(c.components) for c in M.matrix.columns()] if M.ambient_rank else []
    nrows = M.ambient_rank
    while True:
        cols = [c for c in cols if any(not a.is_zero() for a in c)]
        hit = None
        for j, c in enumerate(cols):
            for i, a in enumerate(c):
                if a and a.is_constant():
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        pivot = cols[j]
        inv = 1 / pivot[i].constant_value()
        new_cols = []
        for k, c in enumerate(cols):
            if k == j:
                continue
            f = c[i]
            if f:
                c = [a - f * inv * b for a, b in zip(c, pivot)]
            new_cols.append(c[:i] + c[i + 1:])
        cols = new_cols
        nrows -= 1
    if nrows == 0:
        return PresentedModule(n, 0, Matrix.zeros(n, 0, 0), M.provenance)
    gens = minimize_generators(Submodule(n, nrows, tuple(FreeElement(tuple(c)) for c in cols)))
    return PresentedModule(n, nrows, Matrix.from_columns(gens.generators, n, nrows), M.provenance)


def annihilator(M: PresentedModule) -> Ideal:
    """ann(coker A) as the intersection of the quotients (im A : e_i)."""
    n = M.nvars
    if M.ambient_rank == 0:
        return unit_ideal(n)
    N = M.relations()
    quotients = [module_quotient(N, FreeElement.basis_vector(n, M.ambient_rank, i))
                 for i in range(M.ambient_rank)]
    return intersect_ideals(quotients, n)


def free_resolution(M: PresentedModule, max_length: Optional[int] = None) -> FreeComplex:
    """A finite free resolution, placed in cohomological degrees [-length, 0].

    Each step takes the syzygies of the previous differential and drops
    redundant generators.  For graded input this produces a minimal
    resolution, hence length <= number of variables.
    """
    n = M.nvars
    limit = (n + 1) if max_length is None else max_length
    rels = minimize_generators(M.relations())
    A = Matrix.from_columns(rels.generators, n, M.ambient_rank)
    mats: List[Matrix] = []
    ranks = [M.ambient_rank]
    while A.ncols:
        mats.append(A)
        ranks.append(A.ncols)
        if len(mats) > limit:
            raise RuntimeError("resolution did not terminate within the length bound")
        syz = minimize_generators(syzygy_module(Submodule(n, A.nrows, tuple(A.columns()))))
        gens = [g for g in syz.generators if not g.is_zero()]
        A = Matrix.from_columns(gens, n, A.ncols)
    length = len(mats)
    r = {-i: ranks[i] for i in range(length + 1)}
    diffs = {-(i + 1): mats[i] for i in range(length)}
    return FreeComplex(n, -length, 0, r, diffs)


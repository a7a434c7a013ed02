"""Cohomology of free complexes, the normalized dual, support dimensions and
local-cohomology degree bounds, plus an Ext/Koszul colimit oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .polycore import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    FreeComplex,
    FreeElement,
    Ideal,
    Matrix,
    Polynomial,
    PresentedModule,
    Submodule,
    annihilator,
    dimension,
    minimize_generators,
    prune_presentation,
    syzygy_module,
)
from .polycore.groebner import _lead, _tkey
from .polycore.poly import GREVLEX

__all__ = [
    "DualizingData",
    "ComplexViolation",
    "OracleVerdict",
    "validate_complex",
    "kernel_generators",
    "cohomology_module",
    "cohomology_is_zero",
    "dualize",
    "support_dimension",
    "local_cohomology_min_degree",
    "koszul_total_complex",
    "ext_colimit_oracle",
    "least_nonvanishing_degree",
]


@dataclass(frozen=True)
class DualizingData:
    """D(F) = Hom(F, S)[shift]; shift is the ambient variable count."""

    shift: int

    def __post_init__(self):
        if self.shift < 0:
            raise ValueError("dualizing shift must be non-negative")


@dataclass(frozen=True)
class ComplexViolation:
    degree: int
    kind: str
    entry: Optional[Tuple[int, int]] = None
    message: str = ""


def validate_complex(C: FreeComplex) -> Optional[ComplexViolation]:
    """None if C is a complex, else the first offending degree and entry."""
    for k in range(C.lo, C.hi):
        d = C.differentials[k]
        if d.shape != (C.rank(k + 1), C.rank(k)):
            return ComplexViolation(k, "shape", None,
                                    f"d^{k} has shape {d.shape}, expected {(C.rank(k + 1), C.rank(k))}")
    for k in range(C.lo, C.hi - 1):
        comp = C.differentials[k + 1] @ C.differentials[k]
        hit = comp.first_nonzero()
        if hit is not None:
            return ComplexViolation(k, "composite", hit, f"d^{k + 1} d^{k} is nonzero at entry {hit}")
    return None


def kernel_generators(C: FreeComplex, k: int) -> List[FreeElement]:
    """Generators of ker(d^k) inside C^k."""
    r = C.rank(k)
    if r == 0:
        return []
    n = C.nvars
    d = C.d(k)
    if d.nrows == 0 or d.is_zero():
        return [FreeElement.basis_vector(n, r, i) for i in range(r)]
    syz = syzygy_module(Submodule(n, d.nrows, tuple(d.columns())))
    return list(minimize_generators(syz).generators)


def _image(C: FreeComplex, k: int) -> Submodule:
    """im(d^{k-1}) inside C^k."""
    if C.rank(k) == 0:
        return Submodule(C.nvars, 1, ())
    cols = [c for c in C.d(k - 1).columns() if not c.is_zero()]
    return Submodule(C.nvars, C.rank(k), tuple(cols))


def cohomology_is_zero(C: FreeComplex, k: int) -> bool:
    if C.rank(k) == 0:
        return True
    im = _image(C, k)
    return all(im.contains(g) for g in kernel_generators(C, k))


def cohomology_module(C: FreeComplex, k: int) -> PresentedModule:
    """H^k(C) = ker d^k / im d^{k-1}, presented on the kernel generators."""
    n = C.nvars
    tag = f"H^{k}"
    if C.rank(k) == 0:
        return PresentedModule(n, 0, Matrix.zeros(n, 0, 0), tag)
    K = kernel_generators(C, k)
    if not K:
        return PresentedModule(n, 0, Matrix.zeros(n, 0, 0), tag)
    im = _image(C, k)
    s = len(K)
    syz = syzygy_module(Submodule(n, C.rank(k), tuple(K) + im.generators))
    rels = [FreeElement(g.components[:s]) for g in syz.generators]
    rels = [g for g in rels if not g.is_zero()]
    M = PresentedModule(n, s, Matrix.from_columns(rels, n, s), tag)
    return prune_presentation(M)


def dualize(C: FreeComplex, dual: DualizingData) -> FreeComplex:
    """Term-wise transpose with C^k placed in degree -k - shift."""
    n = dual.shift
    lo, hi = -C.hi - n, -C.lo - n
    ranks = {j: C.rank(-j - n) for j in range(lo, hi + 1)}
    diffs = {j: C.d(-j - n - 1).transpose() for j in range(lo, hi)}
    return FreeComplex(C.nvars, lo, hi, ranks, diffs)


def support_dimension(M: PresentedModule, extra: Optional[Ideal] = None):
    """dim(supp M ∩ V(extra)); MINUS_INFINITY when empty."""
    if M.is_zero():
        return MINUS_INFINITY
    ann = annihilator(M)
    if extra is not None:
        ann = ann + extra
    return dimension(ann)


def local_cohomology_min_degree(Z: Ideal, C: FreeComplex, dual: DualizingData):
    """Largest n with dim(V(Z) ∩ supp H^k(D C)) <= -k - n for every k."""
    D = dualize(C, dual)
    best = PLUS_INFINITY
    for k in D.degrees():
        if cohomology_is_zero(D, k):
            continue
        sd = support_dimension(cohomology_module(D, k), Z)
        if sd == MINUS_INFINITY:
            continue
        best = min(best, -k - sd)
    return best


# -- Koszul / Ext colimit oracle ----------------------------------------------------


def _subsets(c: int, j: int) -> List[Tuple[int, ...]]:
    return list(itertools.combinations(range(c), j))


def koszul_total_complex(fs: Sequence[Polynomial], C: FreeComplex) -> FreeComplex:
    """Tot(K^•(f_1..f_c) ⊗ C): the cochain Koszul complex tensored with C.

    When f is a regular sequence this is Hom(resolution of S/(f), C).
    """
    n, c = C.nvars, len(fs)
    lo, hi = C.lo, C.hi + c
    layout: Dict[int, List[Tuple[int, Tuple[int, ...], int]]] = {}
    for deg in range(lo, hi + 1):
        blocks, off = [], 0
        for j in range(c + 1):
            r = C.rank(deg - j)
            if r == 0:
                continue
            for I in _subsets(c, j):
                blocks.append((j, I, off))
                off += r
        layout[deg] = blocks
    ranks = {deg: sum(C.rank(deg - j) for j, _, _ in layout[deg]) for deg in layout}
    z = Polynomial.zero(n)
    diffs = {}
    for deg in range(lo, hi):
        rows = [[z] * ranks[deg] for _ in range(ranks[deg + 1])]
        target = {(j, I): off for j, I, off in layout[deg + 1]}
        for j, I, off in layout[deg]:
            r = C.rank(deg - j)
            # internal differential, sign (-1)^j
            dC = C.d(deg - j)
            if (j, I) in target and dC.nrows:
                toff = target[(j, I)]
                sgn = -1 if j % 2 else 1
                for a in range(dC.nrows):
                    for b in range(dC.ncols):
                        e = dC.rows[a][b]
                        if e:
                            rows[toff + a][off + b] = e * sgn
            # Koszul differential e_I -> sum_k ± f_k e_{I ∪ k}
            for k in range(c):
                if k in I:
                    continue
                J = tuple(sorted(I + (k,)))
                if (j + 1, J) not in target:
                    continue
                toff = target[(j + 1, J)]
                sgn = -1 if sum(1 for i in I if i < k) % 2 else 1
                for b in range(r):
                    rows[toff + b][off + b] = fs[k] * sgn
        diffs[deg] = Matrix(n, ranks[deg + 1], ranks[deg], tuple(tuple(row) for row in rows))
    return FreeComplex(n, lo, hi, ranks, diffs)


def _transition(fs: Sequence[Polynomial], C: FreeComplex, deg: int, power: int) -> Matrix:
    """Degree-deg component of K(f^t) ⊗ C -> K(f^{t+power}) ⊗ C, e_I -> f_I^power e_I."""
    n, c = C.nvars, len(fs)
    entries = []
    for j in range(c + 1):
        r = C.rank(deg - j)
        if r == 0:
            continue
        for I in _subsets(c, j):
            m = Polynomial.constant(n, 1)
            for i in I:
                m = m * fs[i] ** power
            entries.extend([m] * r)
    N = len(entries)
    z = Polynomial.zero(n)
    rows = tuple(tuple(entries[i] if i == j else z for j in range(N)) for i in range(N))
    return Matrix(n, N, N, rows)


def _standard_counts(M: PresentedModule, window: Tuple[int, int]) -> Tuple[int, ...]:
    """Standard monomials of each total degree in the window, over all components."""
    if M.ambient_rank == 0:
        return tuple(0 for _ in range(window[0], window[1] + 1))
    tkey = _tkey(GREVLEX)
    leads = [_lead(v, tkey) for v in M.relations().gb_vecs()]
    n = M.nvars
    out = []
    for d in range(window[0], window[1] + 1):
        count = 0
        for exp in _monomials_of_degree(n, d):
            for pos in range(M.ambient_rank):
                if not any(p == pos and all(a <= b for a, b in zip(e, exp)) for p, e in leads):
                    count += 1
        out.append(count)
    return tuple(out)


def _monomials_of_degree(n: int, d: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev, exp = -1, []
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(d + n - 1 - prev - 1)
        yield tuple(exp)


@dataclass(frozen=True)
class OracleVerdict:
    status: str  # nonvanishing_detected | vanishing_up_to_t_max | inconclusive
    degree: int
    t_max: int
    witness_t: Optional[int] = None
    stabilized: bool = False
    nonzero_stages: Tuple[int, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "degree": self.degree,
            "t_max": self.t_max,
            "witness_t": self.witness_t,
            "stabilized": self.stabilized,
            "nonzero_stages": list(self.nonzero_stages),
        }


def ext_colimit_oracle(J: Sequence[Polynomial], C: FreeComplex, i: int, t_max: int,
                       window: Tuple[int, int] = (0, 4)) -> OracleVerdict:
    """Semi-decide H^i_J(C) = colim_t H^i(K(f^t) ⊗ C).

    A class at stage t < t_max whose image at stage t_max is not a boundary
    is reported as nonvanishing.  If no stage carries such a class the answer
    is vanishing up to t_max; ``stabilized`` compares the standard-monomial
    counts of the last two stages over the degree window.
    """
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    J = list(J)
    tots = []
    nonzero = []
    for t in range(1, t_max + 1):
        ft = [f ** t for f in J]
        T = koszul_total_complex(ft, C)
        tots.append((ft, T))
        if not cohomology_is_zero(T, i):
            nonzero.append(t)
    if not nonzero:
        return OracleVerdict("vanishing_up_to_t_max", i, t_max, None, True, ())
    if t_max == 1:
        return OracleVerdict("inconclusive", i, t_max, None, False, tuple(nonzero))
    _, last = tots[-1]
    boundaries = _image(last, i)
    for t in nonzero:
        if t == t_max:
            continue
        _, T = tots[t - 1]
        phi = _transition(J, C, i, t_max - t)
        for z in kernel_generators(T, i):
            if not boundaries.contains(phi.apply(z)):
                return OracleVerdict("nonvanishing_detected", i, t_max, t, False, tuple(nonzero))
    prev = cohomology_module(tots[-2][1], i)
    cur = cohomology_module(last, i)
    stable = _standard_counts(prev, window) == _standard_counts(cur, window)
    return OracleVerdict("vanishing_up_to_t_max", i, t_max, None, stable, tuple(nonzero))


def least_nonvanishing_degree(J: Sequence[Polynomial], C: FreeComplex, t_max: int,
                              window: Tuple[int, int] = (0, 4)):
    """Smallest i where the oracle detects nonvanishing; PLUS_INFINITY if none."""
    for i in range(C.lo, C.hi + len(J) + 1):
        if ext_colimit_oracle(J, C, i, t_max, window).status == "nonvanishing_detected":
            return i
    return PLUS_INFINITY

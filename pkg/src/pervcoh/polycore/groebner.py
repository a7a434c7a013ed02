"""Buchberger's algorithm over free modules S^r, S = Q[x_1..x_n].

Module elements are handled internally as sparse dicts keyed by
``(position, exponent)``.  Terms are compared position-over-term: a lower
position index dominates, ties broken by the monomial order.  Ideals are
the rank-1 case.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .poly import (
    GREVLEX,
    Exponent,
    MonomialOrder,
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

Term = Tuple[int, Exponent]
Vec = Dict[Term, Fraction]

MINUS_INFINITY = float("-inf")
PLUS_INFINITY = float("inf")


# -- vectors ----------------------------------------------------------------


def _tkey(order: MonomialOrder):
    key = order.key

    def tkey(t: Term):
        return (-t[0], key(t[1]))

    return tkey


def _lead(v: Vec, tkey) -> Term:
    return max(v, key=tkey)


def _axpy(v: Vec, q: Fraction, shift: Exponent, w: Vec, pos_offset: int = 0) -> None:
    """v -= q * x^shift * w, in place."""
    for (p, e), c in w.items():
        t = (p + pos_offset, mono_mul(e, shift))
        nv = v.get(t, 0) - q * c
        if nv:
            v[t] = nv
        else:
            v.pop(t, None)


def _monic(v: Vec, tkey) -> Vec:
    lc = v[_lead(v, tkey)]
    if lc == 1:
        return v
    inv = 1 / lc
    return {t: c * inv for t, c in v.items()}


def _reduce(v: Vec, basis: Sequence[Tuple[Term, Vec]], tkey) -> Vec:
    """Full reduction of v against (leading term, monic vector) pairs."""
    v = dict(v)
    rem: Vec = {}
    while v:
        t = _lead(v, tkey)
        c = v[t]
        for bt, bv in basis:
            if bt[0] == t[0] and mono_divides(bt[1], t[1]):
                _axpy(v, c, mono_div(t[1], bt[1]), bv)
                break
        else:
            rem[t] = c
            del v[t]
    return rem


def _buchberger(gens: Iterable[Vec], order: MonomialOrder, rank_one: bool) -> List[Vec]:
    tkey = _tkey(order)
    G: List[Vec] = []
    LT: List[Term] = []
    pairs = set()

    def add(v: Vec):
        v = _monic(v, tkey)
        t = _lead(v, tkey)
        k = len(G)
        for i, s in enumerate(LT):
            if s[0] == t[0]:
                pairs.add((i, k))
        G.append(v)
        LT.append(t)

    for g in gens:
        r = _reduce(g, list(zip(LT, G)), tkey) if G else dict(g)
        if r:
            add(r)

    def pair_key(pq):
        i, j = pq
        return (sum(mono_lcm(LT[i][1], LT[j][1])), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        ti, tj = LT[i], LT[j]
        lcm = mono_lcm(ti[1], tj[1])
        if rank_one and lcm == mono_mul(ti[1], tj[1]):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or LT[k][0] != ti[0] or not mono_divides(LT[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            continue
        s: Vec = {}
        _axpy(s, Fraction(-1), mono_div(lcm, ti[1]), G[i])
        _axpy(s, Fraction(1), mono_div(lcm, tj[1]), G[j])
        r = _reduce(s, list(zip(LT, G)), tkey)
        if r:
            add(r)

    return _reduced(G, LT, tkey)


def _reduced(G: List[Vec], LT: List[Term], tkey) -> List[Vec]:
    keep = []
    for i, t in enumerate(LT):
        dominated = False
        for j, s in enumerate(LT):
            if i == j or s[0] != t[0] or not mono_divides(s[1], t[1]):
                continue
            if s != t or j < i:
                dominated = True
                break
        if not dominated:
            keep.append(i)
    basis = [(LT[i], G[i]) for i in keep]
    out = []
    for idx, (t, v) in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        head = {t: v[t]}
        tail = dict(v)
        del tail[t]
        r = _reduce(tail, others, tkey) if tail else {}
        r.update(head)
        out.append(_monic(r, tkey))
    out.sort(key=lambda v: tkey(_lead(v, tkey)))
    return out


# -- public element types ------------------------------------------------------


@dataclass(frozen=True)
class FreeElement:
    """An element of the free module S^rank."""

    components: Tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("free elements need rank >= 1")
        n = self.components[0].nvars
        if any(c.nvars != n for c in self.components):
            raise ValueError("components live in different rings")

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __add__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, f: Polynomial) -> "FreeElement":
        return FreeElement(tuple(f * c for c in self.components))

    @classmethod
    def zero(cls, nvars: int, rank: int) -> "FreeElement":
        return cls(tuple(Polynomial.zero(nvars) for _ in range(rank)))

    @classmethod
    def basis_vector(cls, nvars: int, rank: int, i: int) -> "FreeElement":
        comps = [Polynomial.zero(nvars)] * rank
        comps[i] = Polynomial.constant(nvars, 1)
        return cls(tuple(comps))


def to_vec(x: Union[Polynomial, FreeElement], offset: int = 0) -> Vec:
    comps = (x,) if isinstance(x, Polynomial) else x.components
    v: Vec = {}
    for p, poly in enumerate(comps):
        for e, c in poly.items():
            v[(p + offset, e)] = c
    return v


def from_vec(v: Vec, nvars: int, rank: int, offset: int = 0) -> FreeElement:
    buckets: List[Dict[Exponent, Fraction]] = [dict() for _ in range(rank)]
    for (p, e), c in v.items():
        buckets[p - offset][e] = c
    return FreeElement(tuple(Polynomial._raw(nvars, b) for b in buckets))


class _GBCache:
    """Per-order Gröbner cache; concurrent readers see only finished bases."""

    def __init__(self):
        self._lock = threading.Lock()
        self._store: Dict[MonomialOrder, List[Vec]] = {}

    def get(self, order: MonomialOrder, compute):
        with self._lock:
            hit = self._store.get(order)
            if hit is None:
                hit = compute()
                self._store[order] = hit
            return hit


@dataclass(frozen=True)
class Submodule:
    """A submodule of S^ambient_rank given by generators."""

    nvars: int
    ambient_rank: int
    generators: Tuple[FreeElement, ...] = ()
    _cache: _GBCache = field(default_factory=_GBCache, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.rank != self.ambient_rank:
                raise ValueError(f"generator of rank {g.rank} in a rank-{self.ambient_rank} module")
            if g.nvars != self.nvars:
                raise ValueError("generator lives in a different ring")

    def gb_vecs(self, order: MonomialOrder = GREVLEX) -> List[Vec]:
        return self._cache.get(
            order,
            lambda: _buchberger([to_vec(g) for g in self.generators], order, self.ambient_rank == 1),
        )

    def groebner(self, order: MonomialOrder = GREVLEX) -> List[FreeElement]:
        return [from_vec(v, self.nvars, self.ambient_rank) for v in self.gb_vecs(order)]

    def contains(self, v: FreeElement) -> bool:
        return normal_form(v, self).is_zero()

    def is_zero(self) -> bool:
        return not self.gb_vecs()

    def is_whole(self) -> bool:
        """True iff the submodule is all of S^r."""
        return all(self.contains(FreeElement.basis_vector(self.nvars, self.ambient_rank, i))
                   for i in range(self.ambient_rank))


@dataclass(frozen=True)
class Ideal:
    """An ideal of S given by generators, with a lazily cached Gröbner basis."""

    nvars: int
    generators: Tuple[Polynomial, ...] = ()
    _cache: _GBCache = field(default_factory=_GBCache, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(g for g in self.generators)
        for g in gens:
            if g.nvars != self.nvars:
                raise ValueError("generator lives in a different ring")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, gens: Sequence[Polynomial], nvars: Optional[int] = None) -> "Ideal":
        gens = list(gens)
        if nvars is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty generator list")
            nvars = gens[0].nvars
        return cls(nvars, tuple(gens))

    def gb_vecs(self, order: MonomialOrder = GREVLEX) -> List[Vec]:
        return self._cache.get(order, lambda: _buchberger([to_vec(g) for g in self.generators], order, True))

    def groebner(self, order: MonomialOrder = GREVLEX) -> List[Polynomial]:
        return [from_vec(v, self.nvars, 1)[0] for v in self.gb_vecs(order)]

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.nvars != self.nvars:
            raise ValueError("ring mismatch")
        return Ideal(self.nvars, self.generators + other.generators)

    def plus(self, *polys: Polynomial) -> "Ideal":
        return Ideal(self.nvars, self.generators + tuple(polys))

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_unit(self) -> bool:
        """True iff 1 is in the ideal, i.e. V(I) is empty over the algebraic closure."""
        gb = self.gb_vecs()
        return len(gb) == 1 and all(not any(e) for (_, e) in gb[0])

    def is_zero(self) -> bool:
        return not self.gb_vecs()

    def leading_monomials(self, order: MonomialOrder = GREVLEX) -> List[Exponent]:
        tkey = _tkey(order)
        return [_lead(v, tkey)[1] for v in self.gb_vecs(order)]


def unit_ideal(nvars: int) -> Ideal:
    return Ideal(nvars, (Polynomial.constant(nvars, 1),))


def zero_ideal(nvars: int) -> Ideal:
    return Ideal(nvars, ())


# -- operations ---------------------------------------------------------------


def groebner_basis(gens: Union[Ideal, Submodule], order: MonomialOrder = GREVLEX):
    """Reduced Gröbner basis, returned as an object of the same kind."""
    if isinstance(gens, Ideal):
        out = Ideal(gens.nvars, tuple(gens.groebner(order)))
    else:
        out = Submodule(gens.nvars, gens.ambient_rank, tuple(gens.groebner(order)))
    out._cache._store[order] = gens.gb_vecs(order)
    return out


def normal_form(v, basis, order: MonomialOrder = GREVLEX):
    """Remainder of v on division by the Gröbner basis of ``basis``.

    ``basis`` is an Ideal or Submodule (its cached basis is used).  Returns a
    Polynomial for polynomial input, else a FreeElement.
    """
    tkey = _tkey(order)
    if isinstance(basis, Ideal):
        rank, nvars = 1, basis.nvars
    else:
        rank, nvars = basis.ambient_rank, basis.nvars
    if isinstance(v, Polynomial):
        if rank != 1:
            raise ValueError(f"rank mismatch: polynomial against a rank-{rank} module")
        if v.nvars != nvars:
            raise ValueError("ring mismatch")
    elif v.rank != rank:
        raise ValueError(f"rank mismatch: element of rank {v.rank} against rank {rank}")
    gb = basis.gb_vecs(order)
    pairs = [(_lead(b, tkey), b) for b in gb]
    r = _reduce(to_vec(v), pairs, tkey)
    out = from_vec(r, nvars, rank)
    return out[0] if isinstance(v, Polynomial) else out


def s_pairs_reduce_to_zero(basis: Union[Ideal, Submodule], order: MonomialOrder = GREVLEX) -> bool:
    """Re-check Buchberger's criterion on a cached basis (no pruning criteria)."""
    tkey = _tkey(order)
    gb = basis.gb_vecs(order)
    pairs = [(_lead(b, tkey), b) for b in gb]
    for (ti, gi), (tj, gj) in itertools.combinations(pairs, 2):
        if ti[0] != tj[0]:
            continue
        lcm = mono_lcm(ti[1], tj[1])
        s: Vec = {}
        _axpy(s, Fraction(-1) / gi[ti], mono_div(lcm, ti[1]), gi)
        _axpy(s, Fraction(1) / gj[tj], mono_div(lcm, tj[1]), gj)
        if _reduce(s, pairs, tkey):
            return False
    return True


def syzygy_module(M: Submodule) -> Submodule:
    """Generators of the kernel of S^m -> S^r, e_i -> (i-th generator of M).

    Computed from one Gröbner basis of the graph module {(g_i, e_i)} under a
    position-over-term order where the original coordinates dominate.
    """
    r, m, n = M.ambient_rank, len(M.generators), M.nvars
    if m == 0:
        return Submodule(n, 1, ())
    graph = []
    for i, g in enumerate(M.generators):
        v = to_vec(g)
        v[(r + i, (0,) * n)] = Fraction(1)
        graph.append(v)
    gb = _buchberger(graph, GREVLEX, False)
    tkey = _tkey(GREVLEX)
    syz = [from_vec(v, n, m, offset=r) for v in gb if _lead(v, tkey)[0] >= r]
    return Submodule(n, m, tuple(syz))


def minimize_generators(M: Submodule) -> Submodule:
    """Drop zero generators and generators lying in the span of the remaining ones."""
    gens = [g for g in M.generators if not g.is_zero()]
    i = len(gens) - 1
    while i >= 0 and len(gens) > 1:
        rest = Submodule(M.nvars, M.ambient_rank, tuple(gens[:i] + gens[i + 1:]))
        if rest.contains(gens[i]):
            gens.pop(i)
        i -= 1
    return Submodule(M.nvars, M.ambient_rank, tuple(gens))


def module_quotient(N: Submodule, v: FreeElement) -> Ideal:
    """(N : v) = {f in S : f v in N}."""
    n = N.nvars
    stacked = Submodule(n, N.ambient_rank, (v,) + N.generators)
    syz = syzygy_module(stacked)
    return Ideal(n, tuple(s[0] for s in syz.generators if not s[0].is_zero()))


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    N = Submodule(I.nvars, 1, tuple(FreeElement((g,)) for g in I.generators))
    return module_quotient(N, FreeElement((f,)))


def intersect_ideals(ideals: Sequence[Ideal], nvars: int) -> Ideal:
    """Intersection; the empty intersection is the unit ideal."""
    ideals = list(ideals)
    if not ideals:
        return unit_ideal(nvars)
    acc = ideals[0]
    for J in ideals[1:]:
        acc = _intersect2(acc, J)
    return acc


def _intersect2(I: Ideal, J: Ideal) -> Ideal:
    n = I.nvars
    zero = Polynomial.zero(n)
    one = Polynomial.constant(n, 1)
    gens = [FreeElement((one, one))]
    gens += [FreeElement((g, zero)) for g in I.generators]
    gens += [FreeElement((zero, h)) for h in J.generators]
    syz = syzygy_module(Submodule(n, 2, tuple(gens)))
    out = [s[0] for s in syz.generators if not s[0].is_zero()]
    return Ideal(n, tuple(Ideal(n, tuple(out)).groebner()))


def product_ideal(ideals: Sequence[Ideal], nvars: int) -> Ideal:
    gens = [Polynomial.constant(nvars, 1)]
    for J in ideals:
        gens = [a * b for a in gens for b in J.generators]
        if not gens:
            break
    return Ideal(nvars, tuple(gens))


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """True iff f^k is in I for some k (auxiliary-variable test: 1 in I + (1 - t f))."""
    if f.is_zero():
        return True
    n = I.nvars
    if f.nvars != n:
        raise ValueError("ring mismatch")
    t = Polynomial.var(n + 1, n)
    gens = tuple(g.embed(n + 1) for g in I.generators) + (1 - t * f.embed(n + 1),)
    return Ideal(n + 1, gens).is_unit()


def same_radical(I: Ideal, J: Ideal) -> bool:
    return (all(radical_membership(g, J) for g in I.generators)
            and all(radical_membership(h, I) for h in J.generators))


def radical_contains(I: Ideal, J: Ideal) -> bool:
    """True iff J is contained in the radical of I, i.e. V(I) ⊆ V(J)."""
    return all(radical_membership(h, I) for h in J.generators)


def dimension(I: Ideal):
    """Krull dimension of S/I: largest variable set independent modulo in(I).

    Returns MINUS_INFINITY for the unit ideal.
    """
    if I.is_unit():
        return MINUS_INFINITY
    lms = I.leading_monomials()
    return monomial_dimension(lms, I.nvars)


def monomial_dimension(lms: Sequence[Exponent], nvars: int):
    """Dimension of S/(monomials) by brute-force search over variable subsets."""
    if any(not any(e) for e in lms):
        return MINUS_INFINITY
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in lms]
    for size in range(nvars, -1, -1):
        for U in itertools.combinations(range(nvars), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return 0

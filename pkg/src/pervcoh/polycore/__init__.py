"""Exact polynomial arithmetic and the Gröbner engine over free modules."""

from .groebner import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    FreeElement,
    Ideal,
    Submodule,
    dimension,
    groebner_basis,
    ideal_quotient,
    intersect_ideals,
    minimize_generators,
    module_quotient,
    normal_form,
    product_ideal,
    radical_contains,
    radical_membership,
    s_pairs_reduce_to_zero,
    same_radical,
    syzygy_module,
    unit_ideal,
    zero_ideal,
)
from .matrix import Matrix, block_diagonal
from .modules import (
    FreeComplex,
    PresentedModule,
    annihilator,
    direct_sum,
    free_resolution,
    prune_presentation,
    split_acyclic,
)
from .poly import GREVLEX, MonomialOrder, ParseError, Polynomial, format_poly, parse_poly, polys

__all__ = [name for name in dir() if not name.startswith("_")]

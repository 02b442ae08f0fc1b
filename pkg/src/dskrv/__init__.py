"""Exact computations in the free Lie algebra on two generators: double shuffle
elements, their images as special derivations, and the checks relating them."""

from .ds import DsElement, chain_checks, ds_basis, is_ds, star_correction, stuffle_defects
from .krv import at_map, divergence, ds_to_krv, furusho_map, is_krv, morphism_check, triangle_check
from .lie import (
    GenDerivation,
    TangentialDerivation,
    ad_divide,
    ber,
    bernoulli,
    derivation_bracket,
    embed,
    is_lie,
    lie_bracket,
    lyndon_basis,
    partner,
    poisson_bracket,
    t_elements,
)
from .ncpoly import CyclicPoly, Poly, gens, substitute, trace, trace_target

__version__ = "0.1.0"

__all__ = [
    "CyclicPoly",
    "DsElement",
    "GenDerivation",
    "Poly",
    "TangentialDerivation",
    "ad_divide",
    "at_map",
    "ber",
    "bernoulli",
    "chain_checks",
    "derivation_bracket",
    "divergence",
    "ds_basis",
    "ds_to_krv",
    "embed",
    "furusho_map",
    "gens",
    "is_ds",
    "is_krv",
    "is_lie",
    "lie_bracket",
    "lyndon_basis",
    "morphism_check",
    "partner",
    "poisson_bracket",
    "star_correction",
    "stuffle_defects",
    "substitute",
    "t_elements",
    "trace",
    "trace_target",
    "triangle_check",
]

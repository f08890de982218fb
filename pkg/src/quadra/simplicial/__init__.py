"""Ordered simplicial complexes, their cochains, cohomology and manifold invariants."""

from .builtins import load
from .cochain import Cochain, cup, cup_i, cup_power
from .cohomology import CohomologyClass, CohomologyGroup, cohomology, homology_invariants, trivialize
from .complex import Chain, ComplexError, SimplicialComplex, boundary_of_simplex, fundamental_cycle
from .manifold import (
    bockstein,
    change_of_spin_shift,
    integral_wu_lift,
    kappa_manifold,
    q_lambda,
    signature,
    steenrod_square,
    wu_class,
)
from .product import ProductComplex, cross, integrate_interval, prism, restrict_end, slant

__all__ = [
    "Chain", "Cochain", "CohomologyClass", "CohomologyGroup", "ComplexError", "ProductComplex",
    "SimplicialComplex", "bockstein", "boundary_of_simplex", "change_of_spin_shift", "cohomology",
    "cross", "cup", "cup_i", "cup_power", "fundamental_cycle", "homology_invariants",
    "integral_wu_lift", "integrate_interval", "kappa_manifold", "load", "prism", "q_lambda",
    "restrict_end", "signature", "slant", "steenrod_square", "trivialize", "wu_class",
]

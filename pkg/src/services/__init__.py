"""Operations on finite systems and affine presentations.

Classification and analysis depend on the catalog repository and are
imported from their own modules.
"""

from src.services.affsys import (  # noqa: F401
    build_finite_Ann,
    build_quotient,
    build_twisted,
    build_untwisted,
    decompose_agrs,
    k_function,
    normalize_delta,
    validate_agrs,
    window,
)
from src.services.finsys import (  # noqa: F401
    check_axioms,
    decompose,
    generate,
    reflect,
    t_coeff,
    weyl_orbits,
)
from src.services.isomorphism import isomorphic, isomorphic_affine  # noqa: F401

__all__ = [
    "build_finite_Ann",
    "build_quotient",
    "build_twisted",
    "build_untwisted",
    "check_axioms",
    "decompose",
    "decompose_agrs",
    "generate",
    "isomorphic",
    "isomorphic_affine",
    "k_function",
    "normalize_delta",
    "reflect",
    "t_coeff",
    "validate_agrs",
    "weyl_orbits",
    "window",
]

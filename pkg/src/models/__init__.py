"""Frozen value types: spaces, finite systems, affine presentations and type tags."""

from src.models.presentation import AffinePresentation, Fiber, KFunction  # noqa: F401
from src.models.space import FormSpace, QuotientMap, Vector  # noqa: F401
from src.models.system import FiniteRootSystem, ReflectionPermutation  # noqa: F401
from src.models.tag import Family, TypeTag, make_tag, parse_label  # noqa: F401

__all__ = [
    "AffinePresentation",
    "Family",
    "Fiber",
    "FiniteRootSystem",
    "FormSpace",
    "KFunction",
    "QuotientMap",
    "ReflectionPermutation",
    "TypeTag",
    "Vector",
    "make_tag",
    "parse_label",
]

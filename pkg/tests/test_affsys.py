"""Tests for affine presentations, AGRS validation and windows."""

from fractions import Fraction

import pytest

from src.errors import InvalidInputError, NotApplicableError
from src.models.presentation import AffinePresentation, Fiber
from src.models.space import FormSpace, vector
from src.models.system import FiniteRootSystem
from src.schemas.report import AxiomId
from src.services.affsys import (
    build_finite_Ann,
    build_peculiar,
    build_quotient,
    cl_of,
    decompose_agrs,
    direct_sum,
    embedded_quotient,
    k_function,
    lcm_of_steps,
    normalize_delta,
    presentation_from_finite,
    rescale_delta,
    restrict_classes,
    shift_presentation,
    validate_agrs,
    window,
)
from src.services.exactlin import fraction_gcd, radical

AGRS_LABELS = [
    "A_1^(1)",
    "A_2^(1)",
    "B_2^(1)",
    "G_2^(1)",
    "A_2^(2)",
    "A_4^(2)",
    "A_5^(2)",
    "D_4^(2)",
    "D_4^(3)",
    "B(0,1)^(1)",
    "A(1,2)^(1)",
    "B(1,1)^(1)",
    "D(2,1;2)^(1)",
    "A(0,1)^(2)",
    "C(3)^(2)",
    "D(3,1)^(2)",
    "A(2,1)^(2)",
    "A(1,3)^(2)",
    "A(0,2)^(4)",
    "C(1,1)^(1/3)",
    "C(1,1)^(1/2)",
    "A~(2,2)^(1)_(1/3)",
]


@pytest.mark.parametrize("label", AGRS_LABELS)
def test_catalog_presentations_are_agrs(affine, settings, label):
    """Every affine catalog entry should validate as an irreducible AGRS."""
    report = validate_agrs(affine(label), settings)
    assert report.is_grs, report.violations
    assert report.is_irreducible
    assert report.kind == "affine"
    assert not report.is_finite


def test_untwisted_window_size(affine):
    """A_1^(1) has 10 roots with |offset| <= 2."""
    W = window(affine("A_1^(1)"), 2)
    assert len(W) == 10
    assert W.dim == 2
    assert len(radical(W.space)) == 1


def test_cl_of_is_the_base(affine, finite):
    """cl(R) is the finite base of the presentation."""
    assert cl_of(affine("A_1^(1)")) == finite("A_1")
    assert len(cl_of(affine("A_2^(2)"))) == len(finite("B(0,1)"))


def test_quotient_with_integral_parameter_is_not_agrs(settings):
    """Ã(1,1)^(1) with every offset integral fails the odd reflection axiom."""
    report = validate_agrs(build_quotient(1, 0), settings)
    assert report.is_weak_grs
    assert not report.is_grs
    assert report.violations_of(AxiomId.ODD_REFLECTION)


def test_peculiar_needs_fractional_parameter():
    """C(1,1)^q is only defined for non-integral q."""
    with pytest.raises(InvalidInputError):
        build_peculiar(1)


def test_peculiar_fibers(affine):
    """Mixed classes of C(1,1)^q carry two residues, 2δ carries q + Z."""
    P = affine("C(1,1)^(1/3)")
    assert P.fiber(vector(2, 0)).residues == (0,)
    assert P.fiber(vector(0, 2)).residues == (Fraction(1, 3),)
    assert P.fiber(vector(1, 1)).residues == (0, Fraction(1, 3))
    assert P.fiber(vector(1, -1)).residues == (0, Fraction(2, 3))


@pytest.mark.parametrize(("n", "size"), [(1, 12), (2, 30)])
def test_finite_ann_sizes(n, size):
    """Ã(n,n) has 2n(n+1) + 2(n+1)^2 roots."""
    P = build_finite_Ann(n)
    assert P.is_finite
    assert len(P.explicit_system()) == size


def test_k_function_values(affine):
    """k is 1 on short classes and the twist on long ones."""
    k = k_function(affine("D_4^(3)"))
    assert set(k.as_dict().values()) == {1, 3}
    k2 = k_function(affine("A_2^(2)"))
    assert k2[vector(1)] == 1
    assert k2[vector(2)] == 2
    assert k_function(affine("A_2^(1)")).gcd == 1
    assert lcm_of_steps(normalize_delta(affine("D_4^(3)"))) == 3


def test_k_function_is_invariant_under_rescaling(affine):
    """Rescaling δ should not change the normalized k-function."""
    P = affine("G_2^(1)")
    assert k_function(rescale_delta(P, Fraction(3))) == k_function(P)
    assert k_function(rescale_delta(P, Fraction(-1, 2))) == k_function(P)


def test_k_function_not_applicable(affine):
    """k is undefined for finite fibers and for peculiar presentations."""
    with pytest.raises(NotApplicableError):
        k_function(build_finite_Ann(1))
    with pytest.raises(NotApplicableError):
        k_function(affine("C(1,1)^(1/3)"))


def test_normalize_delta_fixes_sign(affine):
    """The normalized form should not depend on the sign of δ."""
    shifted = shift_presentation(affine("A_1^(1)"), [Fraction(1, 3)])
    normal = normalize_delta(shifted)
    assert normalize_delta(rescale_delta(shifted, Fraction(-1))) == normal
    assert normal.fiber(vector(1)).residues == (Fraction(2, 3),)


def test_shift_presentation(affine):
    """Shifting moves residues by λ(α) and keeps the AGRS property."""
    shifted = shift_presentation(affine("A_1^(1)"), [Fraction(1, 2)])
    assert shifted.fiber(vector(1)).residues == (Fraction(1, 2),)
    assert shifted.fiber(vector(-1)).residues == (Fraction(1, 2),)
    assert validate_agrs(shifted).is_grs
    with pytest.raises(InvalidInputError):
        shift_presentation(affine("A_1^(1)"), [1, 2])


def test_asymmetric_fibers_are_rejected():
    """fiber(-α) must equal -fiber(α)."""
    base = FiniteRootSystem.create(FormSpace.create(["a"], [[2]]), [vector(1), vector(-1)])
    P = AffinePresentation.create(
        base, [Fiber.create(vector(1), 1, [0]), Fiber.create(vector(-1), 1, [Fraction(1, 2)])]
    )
    report = validate_agrs(P)
    assert not report.is_weak_grs
    assert report.violations_of(AxiomId.EVEN_REFLECTION)


def test_root_in_kernel_is_rejected():
    """A class equal to zero puts δ itself among the roots."""
    base = FiniteRootSystem.create(FormSpace.create(["a"], [[2]]), [vector(-1), vector(0), vector(1)])
    P = AffinePresentation.create(base, [Fiber.create(c, 1, [0]) for c in base.roots])
    report = validate_agrs(P)
    assert not report.is_grs
    assert report.violations_of(AxiomId.AFFINE_KERNEL)


def test_fiber_offsets_form_one_coset_lattice():
    """Rational offsets always sit in r + gZ; inexact offsets are refused."""
    fiber = Fiber.create(vector(1), Fraction(3, 2), [Fraction(1, 3), Fraction(5, 6)])
    offsets = fiber.offsets_within(Fraction(6))
    g = fraction_gcd([*(o - offsets[0] for o in offsets[1:]), fiber.step])
    assert g == Fraction(1, 2)
    assert all(((o - offsets[0]) / g).denominator == 1 for o in offsets)
    with pytest.raises(InvalidInputError):
        Fiber.create(vector(1), 1, [0.5])
    with pytest.raises(InvalidInputError):
        Fiber.create(vector(1), "sqrt(2)", [0])


def test_presentation_from_finite_window(affine):
    """A window reads back as finite fibers over the same classes."""
    P = presentation_from_finite(window(affine("A_1^(1)"), 1))
    assert len(P.classes) == 2
    assert all(f.residues == (-1, 0, 1) for f in P.fibers)
    with pytest.raises(InvalidInputError):
        presentation_from_finite(FiniteRootSystem.create(FormSpace.create(["a"], [[2]]), [vector(1)]))


def test_direct_sum_and_decompose(affine, finite):
    """An affine part plus a finite part splits back into one piece of each."""
    P = direct_sum([affine("A_1^(1)"), finite("A_2")])
    report = validate_agrs(P)
    assert report.is_grs
    assert not report.is_irreducible
    parts = decompose_agrs(P)
    assert len(parts.affine) == 1
    assert len(parts.finite) == 1
    assert len(parts.finite[0]) == 6
    assert parts.span_ok


def test_restrict_classes(affine):
    """restrict_classes keeps the fibers of the chosen classes."""
    P = affine("A_2^(1)")
    kept = restrict_classes(P, [vector(1, 0), vector(-1, 0)])
    assert kept.classes == (vector(-1, 0), vector(1, 0))
    assert kept.fiber(vector(1, 0)) == P.fiber(vector(1, 0))


def test_embedded_quotient_window():
    """The embedded window of a quotient has a one-dimensional radical."""
    R = embedded_quotient(2, Fraction(1, 3), 1)
    assert len(R) > 0
    assert len(radical(R.space)) == 1
    assert not any(all(x == 0 for x in r) for r in R.roots)

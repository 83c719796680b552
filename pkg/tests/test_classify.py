"""Tests for the classifier service."""

from fractions import Fraction

import pytest

from src.errors import UnclassifiableError
from src.models.space import FormSpace, vector
from src.models.system import FiniteRootSystem
from src.models.tag import Family, TypeTag, parse_label
from src.services.affsys import (
    build_finite_Ann,
    build_quotient,
    direct_sum,
    rescale_delta,
    shift_presentation,
    window,
)
from src.services.catalog import build_finite
from src.services.classify import affine_signature, finite_tags_of_rank, quotient_iso
from src.services.exactlin import restrict_to_span

FINITE_LABELS = [
    "A_3",
    "B_3",
    "C_3",
    "D_4",
    "G_2",
    "F_4",
    "E_6",
    "B(0,2)",
    "A(0,1)",
    "A(1,2)",
    "A(2,2)",
    "B(1,1)",
    "B(2,1)",
    "C(3)",
    "C(1,1)",
    "BC(1,2)",
    "D(2,1)",
    "D(2,1;2)",
    "G(3)",
    "F(4)",
]

AFFINE_LABELS = [
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
    "A(0,1)^(2)",
    "C(3)^(2)",
    "D(3,1)^(2)",
    "A(2,1)^(2)",
    "A(1,3)^(2)",
    "A(0,2)^(4)",
    "C(1,1)^(1/3)",
    "A~(2,2)^(1)_(1/3)",
]


def _rebased(R: FiniteRootSystem, factor: int) -> FiniteRootSystem:
    """R in the basis of its last roots, with the form multiplied by factor."""
    restriction = restrict_to_span(R.space, list(reversed(R.roots)))
    return FiniteRootSystem.create(restriction.space.scaled(factor), restriction.coords)


@pytest.mark.parametrize("label", FINITE_LABELS)
def test_finite_catalog_round_trip(classifier, finite, label):
    """Classifying a catalog system should return its canonical tag."""
    assert classifier.classify(finite(label)) == parse_label(label)


@pytest.mark.parametrize("label", ["B_3", "A(1,2)", "B(1,1)", "C(1,1)", "D(2,1;2)"])
def test_classification_ignores_basis_and_scale(classifier, finite, label):
    """A change of basis and a rescaled form should not change the type."""
    assert classifier.classify(_rebased(finite(label), -2)) == parse_label(label)


@pytest.mark.parametrize("label", AFFINE_LABELS)
def test_affine_catalog_round_trip(classifier, affine, label):
    """Classifying a catalog presentation should return its canonical tag."""
    assert classifier.classify(affine(label)) == parse_label(label)


def test_affine_classification_ignores_shift_and_delta_scale(classifier, affine):
    """Shifting residues and rescaling δ keep the affine type."""
    P = affine("D_4^(3)")
    moved = rescale_delta(shift_presentation(P, [Fraction(1, 2), 0]), Fraction(-3))
    assert classifier.classify(moved).label == "D_4^(3)"


def test_quotient_parameters_are_canonical(classifier):
    """Ã(2,2)^(1)_(2/3) is classified with the canonical q = 1/3."""
    assert classifier.classify(build_quotient(2, Fraction(2, 3))).label == "A~(2,2)^(1)_(1/3)"
    assert classifier.classify(build_quotient(1, Fraction(1, 3))).label == "C(1,1)^(1/3)"


def test_d21_with_unit_lambda_has_one_label(classifier):
    """The D(m,n) construction of D(2,1) classifies as D(2,1;1)."""
    R = build_finite(TypeTag(Family.D_SUPER, 2, 1))
    tag = classifier.classify(R)
    assert tag.label == "D(2,1;1)"
    assert tag == tag.canonical()
    assert "D(2,1)" not in {t.label for t in finite_tags_of_rank(3)}


def test_finite_ann_is_classified(classifier):
    """The explicit Ã(1,1) has a degenerate form and 12 roots."""
    assert classifier.classify(build_finite_Ann(1).explicit_system()).label == "A~(1,1)"
    assert classifier.classify(build_finite_Ann(2)).label == "A~(2,2)"


def test_reducible_input_names_decision_point(classifier, plane):
    """A reducible system should raise with the irreducibility decision point."""
    R = FiniteRootSystem.create(plane, [vector(1, 0), vector(-1, 0), vector(0, 1), vector(0, -1)])
    with pytest.raises(UnclassifiableError) as info:
        classifier.classify(R)
    assert info.value.decision_point == "irreducibility"


def test_non_agrs_presentation_is_unclassifiable(classifier):
    """Ã(1,1)^(1) with integral offsets is rejected at validation."""
    with pytest.raises(UnclassifiableError) as info:
        classifier.classify(build_quotient(1, 0))
    assert info.value.decision_point == "validation"


def test_degenerate_window_is_not_finite_agrs(classifier, affine):
    """A window of an affine system is not a finite AGRS."""
    with pytest.raises(UnclassifiableError) as info:
        classifier.classify(window(affine("A_1^(1)"), 1))
    assert info.value.decision_point == "finite AGRS"


def test_unknown_system_fails_certification(classifier):
    """A rank-1 system with three root lengths matches nothing."""
    space = FormSpace.create(["a"], [[1]])
    R = FiniteRootSystem.create(space, [vector(k) for k in (-3, -2, -1, 1, 2, 3)])
    with pytest.raises(UnclassifiableError):
        classifier.classify(R)


def test_finite_tags_of_rank_two():
    """Rank-2 candidates include the classical and super types."""
    labels = {t.label for t in finite_tags_of_rank(2)}
    assert {"A_2", "B_2", "G_2", "B(0,2)", "A(0,1)", "B(1,1)", "C(1,1)", "BC(1,1)"} <= labels
    assert "C_2" not in labels


def test_quotient_iso():
    """q and q' give isomorphic quotients iff q - q' or q + q' is integral."""
    assert quotient_iso(Fraction(1, 3), Fraction(2, 3))
    assert quotient_iso(Fraction(1, 4), Fraction(5, 4))
    assert not quotient_iso(Fraction(1, 3), Fraction(1, 4))


def test_affine_signature_separates_twists(affine):
    """A_2^(2) and A(0,1)^(2) differ only in whether 2α lifts alongside α."""
    assert affine_signature(affine("A_2^(2)")) != affine_signature(affine("A(0,1)^(2)"))


def test_similar_matches_components(classifier, affine, finite, plane):
    """similar should match components up to order and isomorphism."""
    left = direct_sum([affine("A_1^(1)"), finite("A_2")])
    right = direct_sum([finite("A_2"), affine("A_1^(1)")])
    assert classifier.similar(left, right)
    a1a1 = FiniteRootSystem.create(plane, [vector(1, 0), vector(-1, 0), vector(0, 1), vector(0, -1)])
    assert not classifier.similar(a1a1, finite("B_2"))
    assert classifier.similar(a1a1, a1a1)

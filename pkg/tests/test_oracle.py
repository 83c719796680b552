"""Cross-checks of the main algorithms against the brute-force verifiers."""

from fractions import Fraction

import pytest

from src.errors import NotApplicableError, OracleLimitError
from src.models.space import vector
from src.services.affsys import validate_agrs, window
from src.services.analysis import parity_functions
from src.services.finsys import check_axioms
from src.services.isomorphism import isomorphic, verify_witness
from src.services.oracle import brute_axioms, brute_iso, brute_parity, brute_translation


@pytest.mark.parametrize(
    "label", ["A_2", "B_3", "G_2", "B(0,2)", "B(1,1)", "C(1,1)", "BC(1,1)", "A(1,2)", "D(2,1;2)"]
)
def test_brute_axioms_agree_on_finite_systems(finite, settings, label):
    """Flags from the brute-force check should match check_axioms."""
    R = finite(label)
    fast = check_axioms(R, settings)
    slow = brute_axioms(R.roots, R.space, settings=settings)
    assert (slow.is_weak_grs, slow.is_grs, slow.is_rs) == (fast.is_weak_grs, fast.is_grs, fast.is_rs)
    assert slow.is_reduced == fast.is_reduced
    assert slow.is_irreducible == fast.is_irreducible
    assert slow.skipped == 0


@pytest.mark.parametrize("label", ["A_1^(1)", "A_2^(2)", "B(1,1)^(1)", "C(1,1)^(1/3)"])
def test_brute_axioms_on_windows(affine, settings, label):
    """A window of a valid AGRS passes the brute check away from its edge."""
    P = affine(label)
    bound = 2 * (P.max_step + P.max_abs_residue)
    W = window(P, bound)
    slow = brute_axioms(W.roots, W.space, offset_bound=bound, settings=settings)
    assert validate_agrs(P, settings).is_grs
    assert slow.is_grs, slow.violations
    assert slow.kind == "affine"
    assert slow.skipped > 0


def test_brute_axioms_find_odd_reflection_failure(finite, settings):
    """C(1,1) has isotropic pairs with both β ± α in R."""
    R = finite("C(1,1)")
    slow = brute_axioms(R.roots, R.space, settings=settings)
    assert slow.is_weak_grs
    assert not slow.is_grs


@pytest.mark.parametrize(("first", "second"), [("A_2", "A_2"), ("B_2", "C_2"), ("A_2", "B_2"), ("G_2", "A_2")])
def test_brute_iso_agrees(finite, settings, first, second):
    """brute_iso and the canonical-form search decide the same pairs."""
    R1, R2 = finite(first), finite(second)
    fast = isomorphic(R1, R2)
    slow = brute_iso(R1, R2, settings)
    assert (fast is None) == (slow is None)
    if slow is not None:
        assert verify_witness(R1, R2, slow)


@pytest.mark.parametrize("label", ["A_1", "A_2", "B(0,1)", "B(0,2)", "A(0,1)", "B(1,1)"])
def test_brute_parity_agrees(finite, settings, label):
    """The number of parity functions matches the GF(2) solver."""
    R = finite(label)
    found = brute_parity(R, settings)
    solutions = parity_functions(R, settings)
    assert len(found) == solutions.count
    assert {f.bits for f in solutions} == set(found)


def test_oracle_limits(finite, settings):
    """Systems above the configured sizes are refused."""
    with pytest.raises(OracleLimitError):
        brute_iso(finite("B_3"), finite("C_3"), settings)
    with pytest.raises(OracleLimitError):
        brute_parity(finite("B_3"), settings)


def test_translation_for_even_roots(affine, settings):
    """In A_1^(1) two reflections move α by 2δ."""
    report = brute_translation(affine("A_1^(1)"), vector(1), vector(1), 3, settings)
    assert report.passed
    assert report.checked == 4
    with pytest.raises(OracleLimitError):
        brute_translation(affine("A_1^(1)"), vector(1), vector(1), 4, settings)


def test_translation_for_isotropic_roots(affine, settings):
    """Odd reflections at e+d and e+d+δ move e by δ in B(1,1)^(1)."""
    report = brute_translation(affine("B(1,1)^(1)"), vector(1, 1), vector(1, 0), 2, settings)
    assert report.passed
    assert report.checked == 3


def test_translation_needs_defined_coefficient(affine, settings):
    """t is undefined on the pair (e+d, 2e) of C(1,1)."""
    with pytest.raises(NotApplicableError):
        brute_translation(affine("C(1,1)^(1/3)"), vector(1, 1), vector(2, 0), 1, settings)


def test_automorphism_has_unit_scale(finite, settings):
    """An automorphism of B_2 keeps the form scale at 1."""
    witness = brute_iso(finite("B_2"), finite("B_2"), settings)
    assert witness is not None
    assert witness.scale == Fraction(1)

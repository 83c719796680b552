"""Tests for parity functions, subsystems and the correspondence table."""

import pytest

from src.errors import InvalidInputError
from src.models.space import vector
from src.models.tag import parse_label
from src.services.analysis import (
    NO_ISOTROPIC_NOTE,
    SUBSYSTEM_MENU,
    ParityFunction,
    correspondence,
    default_parity,
    has_isotropic_roots,
    is_subsystem,
    parity_constraints,
    parity_functions,
    parity_window,
    subsystem_menu,
)
from src.services.finsys import reflect
from src.services.gf2 import GF2System, bits_of

# ── GF(2) solver ──


def test_gf2_solves_and_enumerates():
    """x0 + x1 = 1 over three unknowns has four solutions."""
    eqs = GF2System(3)
    eqs.add(0b011, 1)
    solution = eqs.solve()
    assert solution is not None
    assert solution.dimension == 2
    found = sorted(solution)
    assert len(found) == 4
    assert len(set(found)) == 4
    assert all(eqs.satisfied_by(x) for x in found)


def test_gf2_detects_inconsistency():
    """x0 = 0 and x0 = 1 together have no solution."""
    eqs = GF2System(2)
    eqs.fix(0, 0)
    eqs.fix(0, 1)
    assert eqs.solve() is None


def test_bits_of():
    """bits_of lists bits from the lowest one up."""
    assert bits_of(0b101, 4) == (1, 0, 1, 0)


# ── Parity ──


@pytest.mark.parametrize(
    ("label", "count"),
    [("A_1", 4), ("B(0,1)", 2), ("B(0,2)", 4), ("B(0,3)", 8), ("A(1,0)", 1), ("A(2,1)", 1)],
)
def test_parity_counts(finite, settings, label, count):
    """Parity function counts of small systems.

    B(0,n) has 2^n: additivity leaves the value on each short root δ_i free,
    so only B(0,1) has exactly two.
    """
    solutions = parity_functions(finite(label), settings)
    assert solutions.count == count
    assert len(list(solutions)) == count
    assert solutions.enumerated


def test_parity_functions_satisfy_constraints(finite, settings):
    """Every enumerated function should satisfy the additive constraints."""
    R = finite("B(1,1)")
    eqs = parity_constraints(R)
    for f in parity_functions(R, settings):
        assert eqs.satisfied_by(f.bits)
        assert all(f[r] == 1 for r in R.isotropic)


@pytest.mark.parametrize("label", ["A_2", "B(0,2)", "B(1,1)", "A(1,2)", "D(2,1;2)", "G(3)"])
def test_default_parity_is_a_parity_function(finite, settings, label):
    """The default parity should be one of the parity functions."""
    R = finite(label)
    assert default_parity(R) in parity_functions(R, settings)


def test_default_parity_marks_doubled_roots(finite):
    """In B(0,1) the roots ±δ are odd and ±2δ even."""
    f = default_parity(finite("B(0,1)"))
    assert f.odd == (vector(-1), vector(1))
    assert f.even == (vector(-2), vector(2))
    assert f.as_dict()[vector(2)] == 0


def test_parity_lookup_rejects_foreign_roots(finite):
    """Looking up a non-root should raise InvalidInputError."""
    f = default_parity(finite("A_1"))
    with pytest.raises(InvalidInputError):
        f[vector(5)]


def test_parity_on_affine_window(affine, settings):
    """Affine parities live on a window covering every triple pattern."""
    P = affine("A_1^(1)")
    assert len(parity_window(P)) == 10
    solutions = parity_functions(P, settings)
    assert solutions.count == 2**10
    assert default_parity(P).bits == 0

    Q = affine("B(0,1)^(1)")
    canonical = default_parity(Q)
    assert canonical in parity_functions(Q, settings)
    assert all(canonical[r] == 1 for r in canonical.roots if abs(r[0]) == 1)


def test_membership_needs_matching_roots(finite, settings):
    """A function over other roots is never a member."""
    solutions = parity_functions(finite("A_1"), settings)
    assert ParityFunction((vector(1),), 0) not in solutions
    assert "odd" not in solutions


def test_large_parity_space_is_not_enumerated(affine):
    """Above the enumeration limit only the basis is kept."""
    from src.config import Settings

    solutions = parity_functions(affine("A_1^(1)"), Settings(_env_file=None, parity_enumeration_max_dim=3))
    assert solutions.count == 2**10
    assert not solutions.enumerated
    assert solutions.dimension == 10


# ── Subsystems ──


def test_subsystem_of_finite_system(finite, classifier):
    """±α1 in A_2 is an A_1; {α1, α2} is not closed."""
    R = finite("A_2")
    result = is_subsystem([vector(1, 0), vector(-1, 0)], R, classifier)
    assert result.is_system
    assert result.label == "A_1"
    broken = is_subsystem([vector(1, 0), vector(0, 1)], R, classifier)
    assert not broken.is_system
    assert broken.label == "not a system"


def test_reducible_subsystem_lists_components(finite, classifier):
    """±e1, ±e2 in B_2 form A_1 ⊕ A_1."""
    R = finite("B_2")
    S = [vector(1, 0), vector(-1, 0), vector(0, 1), vector(0, -1)]
    result = is_subsystem(S, R, classifier)
    assert result.is_system
    assert result.tag is None
    assert result.label == "A_1 ⊕ A_1"


def test_subsystem_of_affine_system(affine, classifier):
    """Lifts of ±α at the same offset form an A_1 inside A_1^(1)."""
    P = affine("A_1^(1)")
    result = is_subsystem([vector(1, 1), vector(-1, -1)], P, classifier)
    assert result.is_system
    assert result.label == "A_1"


def test_odd_reflection_of_even_subsystem_is_not_closed(finite, classifier):
    """r_{e2-d1} carries the B_2 in B(2,1) onto a set that is not a system."""
    R = finite("B(2,1)")
    b2 = [vector(a, b, 0) for a in (-1, 0, 1) for b in (-1, 0, 1) if (a, b) != (0, 0)]
    image = [reflect(R, vector(0, 1, -1), beta) for beta in b2]
    assert vector(1, 0, 1) in image
    assert vector(0, 0, 2) not in image
    result = is_subsystem(image, R, classifier)
    assert not result.is_system
    assert result.label == "not a system"


def test_subsystem_rejects_non_roots(finite, classifier):
    """Vectors outside R and empty selections are invalid input."""
    with pytest.raises(InvalidInputError):
        is_subsystem([vector(2, 0)], finite("A_2"), classifier)
    with pytest.raises(InvalidInputError):
        is_subsystem([], finite("A_2"), classifier)


# ── Correspondence ──


@pytest.mark.parametrize(
    ("label", "row", "structure"),
    [
        ("A_2", "RS", "simple Lie algebra sl(3)"),
        ("B(0,2)", "RS", "osp(1|4)"),
        ("C(1,1)", "weak GRS", "psl(2|2)"),
        ("BC(1,2)", "weak GRS", "none"),
        ("A(1,2)", "GRS", "basic classical superalgebra sl(2|3)"),
        ("B(1,1)", "GRS", "basic classical superalgebra osp(3|2)"),
        ("A~(1,1)", "finite AGRS", "gl(2|2)"),
        ("C(1,1)^(1/3)", "infinite AGRS with cl(R) ≅ A(1,1)", "rational quotient of gl(2|2)^(1)"),
        ("A~(2,2)^(1)_(1/3)", "infinite AGRS with cl(R) ≅ A(n,n)", "infinite quotient of gl(3|3)^(1)"),
        ("A_2^(1)", "ARS", "affine Kac-Moody algebra A_2^(1)"),
        ("B(1,1)^(1)", "AGRS", "affine Kac-Moody superalgebra B(1,1)^(1)"),
    ],
)
def test_correspondence_rows(label, row, structure):
    """Each classified type should land in its row of the table."""
    entry = correspondence(parse_label(label))
    assert entry.row == row
    assert entry.lie_structure == structure


@pytest.mark.parametrize("label", ["B(0,1)^(1)", "C(3)^(2)", "A(0,1)^(2)", "A(0,2)^(4)"])
def test_affine_types_without_isotropic_roots_are_ars(label):
    """Affine super types without isotropic roots are ARSs with a note."""
    tag = parse_label(label)
    assert not has_isotropic_roots(tag)
    entry = correspondence(tag)
    assert entry.row == "ARS"
    assert entry.notes == NO_ISOTROPIC_NOTE


def test_subsystem_menu():
    """The menu entry follows the correspondence row."""
    assert subsystem_menu(parse_label("A_2")) == SUBSYSTEM_MENU[0]
    assert subsystem_menu(parse_label("C(1,1)")) == SUBSYSTEM_MENU[0]
    assert subsystem_menu(parse_label("A_2^(1)")) == SUBSYSTEM_MENU[1]
    assert subsystem_menu(parse_label("C(1,1)^(1/3)")) == SUBSYSTEM_MENU[2]
    assert subsystem_menu(parse_label("A~(2,2)^(1)_(1/3)")) == SUBSYSTEM_MENU[3]
    assert subsystem_menu(parse_label("BC(1,2)")) is None

"""Property-based tests for canonical forms, exact linear algebra and reflections."""

from __future__ import annotations

import math
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.models.presentation import Fiber
from src.models.space import Vector, vector
from src.models.tag import canonical_lambda, canonical_q, parse_label
from src.repositories.catalog_repo import CatalogRepository
from src.services.affsys import k_function, shift_presentation, validate_agrs
from src.services.exactlin import fraction_gcd, nullspace, rank
from src.services.finsys import reflect
from src.services.gf2 import GF2System

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=12)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)

_repo = CatalogRepository()


def _dot(row: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(row, v, strict=True)), Fraction(0))


class TestCanonicalParameterProperties:
    """Quotient and D(2,1;λ) parameters are reduced to one orbit representative."""

    @given(q=rationals, k=st.integers(min_value=-5, max_value=5))
    @settings(max_examples=200)
    def test_canonical_q_ignores_sign_and_integers(self, q: Fraction, k: int) -> None:
        """q, -q and q + k share a representative in [0, 1/2]."""
        c = canonical_q(q)
        assert 0 <= c <= Fraction(1, 2)
        assert canonical_q(-q) == c
        assert canonical_q(q + k) == c

    @given(lam=rationals)
    @settings(max_examples=200)
    def test_canonical_lambda_is_orbit_invariant(self, lam: Fraction) -> None:
        """λ, 1/λ and -1-λ name the same superalgebra."""
        assume(lam not in (0, -1))
        c = canonical_lambda(lam)
        assert canonical_lambda(1 / lam) == c
        assert canonical_lambda(-1 - lam) == c


class TestExactLinearAlgebraProperties:
    """Rank and nullspace over Q agree with each other."""

    @given(
        rows=st.integers(min_value=1, max_value=4).flatmap(
            lambda width: st.lists(
                st.lists(small_rationals, min_size=width, max_size=width), min_size=1, max_size=4
            )
        )
    )
    @settings(max_examples=100)
    def test_rank_nullity(self, rows: list[list[Fraction]]) -> None:
        """rank + nullity equals the number of columns, and kernel vectors vanish."""
        width = len(rows[0])
        kernel = nullspace(rows, width)
        assert rank(rows) + len(kernel) == width
        for v in kernel:
            assert all(_dot(row, v) == 0 for row in rows)


class TestGF2Properties:
    """Every enumerated GF(2) solution satisfies its system."""

    @given(
        equations=st.lists(
            st.tuples(st.integers(min_value=1, max_value=63), st.integers(min_value=0, max_value=1)),
            max_size=6,
        )
    )
    @settings(max_examples=200)
    def test_solutions_satisfy_equations(self, equations: list[tuple[int, int]]) -> None:
        """solve() is either None or a coset whose elements all satisfy the equations."""
        eqs = GF2System(6)
        for mask, rhs in equations:
            eqs.add(mask, rhs)
        solution = eqs.solve()
        if solution is None:
            assert not any(eqs.satisfied_by(x) for x in range(64))
            return
        found = set(solution)
        assert len(found) == solution.count
        assert found == {x for x in range(64) if eqs.satisfied_by(x)}


class TestReflectionProperties:
    """Reflections of generalized root systems are involutions on R."""

    @given(
        label=st.sampled_from(["A_3", "B_3", "G_2", "B(0,2)", "A(1,2)", "B(1,1)", "D(2,1;2)"]),
        data=st.data(),
    )
    @settings(max_examples=100, deadline=None)
    def test_reflection_is_an_involution(self, label: str, data: st.DataObject) -> None:
        """r_α(r_α(β)) = β and r_α(β) ∈ R."""
        R = _repo.finite(parse_label(label))
        alpha = data.draw(st.sampled_from(R.roots))
        beta = data.draw(st.sampled_from(R.roots))
        image = reflect(R, alpha, beta)
        assert image in R
        assert reflect(R, alpha, image) == beta


class TestShiftProperties:
    """Shifting by a functional keeps the type data of an affine system."""

    @given(shift=st.lists(small_rationals, min_size=2, max_size=2))
    @settings(max_examples=25, deadline=None)
    def test_shift_preserves_agrs_and_k(self, shift: list[Fraction]) -> None:
        """A shifted A_2^(1) is still an AGRS with the same k-function."""
        P = _repo.affine(parse_label("A_2^(1)"))
        moved = shift_presentation(P, shift)
        assert validate_agrs(moved).is_grs
        assert k_function(moved) == k_function(P)


class TestFiberLatticeProperties:
    """Offsets over one class always lie in a single coset r + gZ."""

    @given(
        step=st.fractions(min_value=0, max_value=3, max_denominator=4),
        residues=st.lists(small_rationals, min_size=1, max_size=4, unique=True),
    )
    @settings(max_examples=100)
    def test_offsets_lie_in_one_coset(self, step: Fraction, residues: list[Fraction]) -> None:
        if step:
            residues = sorted({r - step * math.floor(r / step) for r in residues})
        fiber = Fiber.create(vector(1), step, residues)
        offsets = fiber.offsets_within(Fraction(8))
        assume(len(offsets) > 1)
        g = fraction_gcd([*(o - offsets[0] for o in offsets[1:]), fiber.step])
        assert g > 0
        assert all(((o - offsets[0]) / g).denominator == 1 for o in offsets)

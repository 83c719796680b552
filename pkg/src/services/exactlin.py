"""Exact linear algebra service: row reduction, radicals and quotient maps over Q."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING

from src.errors import InvalidInputError
from src.models.space import FormSpace, QuotientMap, Vector, dot, unit_vector

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RowEchelon:
    """Reduced row echelon form with the transform that produced it."""

    rows: tuple[Vector, ...]
    pivots: tuple[int, ...]
    transform: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def row_echelon(rows: Sequence[Sequence[Fraction]], width: int | None = None) -> RowEchelon:
    """Reduce a matrix to reduced row echelon form.

    Pivots are chosen at the first nonzero column, taking the smallest row
    index carrying a nonzero entry there. ``transform`` satisfies
    ``transform · input = rows`` row by row.

    Args:
        rows: Matrix rows.
        width: Number of columns; required when ``rows`` is empty.

    Returns:
        The echelon form, its pivot columns and the row transform.
    """
    m = [list(row) for row in rows]
    n_rows = len(m)
    n_cols = width if width is not None else (len(m[0]) if m else 0)
    t = [list(unit_vector(n_rows, i)) for i in range(n_rows)]
    pivots: list[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r >= n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            t[piv_r], t[i_row] = t[i_row], t[piv_r]
        fp = m[piv_r][piv_c]
        if fp != 1:
            m[piv_r] = [v / fp for v in m[piv_r]]
            t[piv_r] = [v / fp for v in t[piv_r]]
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = m[r][piv_c]
            if fr == 0:
                continue
            m[r] = [a - fr * b for a, b in zip(m[r], m[piv_r], strict=True)]
            t[r] = [a - fr * b for a, b in zip(t[r], t[piv_r], strict=True)]
        pivots.append(piv_c)
        piv_r += 1
    rank = len(pivots)
    return RowEchelon(
        rows=tuple(tuple(row) for row in m[:rank]),
        pivots=tuple(pivots),
        transform=tuple(tuple(row) for row in t[:rank]),
    )


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a list of vectors."""
    if not vectors:
        return 0
    return row_echelon(vectors).rank


def nullspace(matrix: Sequence[Sequence[Fraction]], width: int | None = None) -> list[Vector]:
    """Basis of {x : matrix · x = 0}, one vector per free column.

    Each basis vector carries a 1 at its free column and zeros at the other
    free columns.
    """
    n_cols = width if width is not None else (len(matrix[0]) if matrix else 0)
    echelon = row_echelon(matrix, n_cols)
    pivot_set = set(echelon.pivots)
    basis: list[Vector] = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        coords = [Fraction(0)] * n_cols
        coords[free] = Fraction(1)
        for row, pivot in zip(echelon.rows, echelon.pivots, strict=True):
            coords[pivot] = -row[free]
        basis.append(tuple(coords))
    return basis


def solve_square(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector:
    """Solve matrix · x = rhs for an invertible square matrix.

    Raises:
        InvalidInputError: If the matrix is singular.
    """
    n = len(matrix)
    echelon = row_echelon(matrix, n)
    if echelon.rank != n:
        msg = f"Singular {n}x{n} system"
        raise InvalidInputError(msg)
    # rows are the identity, so transform is the inverse
    return tuple(dot(row, rhs) for row in echelon.transform)


class LinearCoordinates:
    """Coordinates of vectors with respect to a fixed family of basis vectors."""

    def __init__(self, basis: Sequence[Vector], dim: int) -> None:
        self.basis = tuple(basis)
        self.dim = dim
        self._echelon = row_echelon(self.basis, dim)
        if self._echelon.rank != len(self.basis):
            msg = f"{len(self.basis)} vectors are linearly dependent (rank {self._echelon.rank})"
            raise InvalidInputError(msg)

    def __call__(self, x: Vector) -> Vector | None:
        """Return c with Σ c_i·basis_i = x, or None when x is outside the span."""
        echelon = self._echelon
        weights = [x[p] for p in echelon.pivots]
        rebuilt = [Fraction(0)] * self.dim
        for w, row in zip(weights, echelon.rows, strict=True):
            if w == 0:
                continue
            for j, value in enumerate(row):
                if value:
                    rebuilt[j] += w * value
        if tuple(rebuilt) != tuple(x):
            return None
        coeffs = [Fraction(0)] * len(self.basis)
        for w, row in zip(weights, echelon.transform, strict=True):
            if w == 0:
                continue
            for j, value in enumerate(row):
                if value:
                    coeffs[j] += w * value
        return tuple(coeffs)

    def contains(self, x: Vector) -> bool:
        return self(x) is not None


def greedy_basis(vectors: Iterable[Vector], dim: int) -> list[int]:
    """Indices of a maximal independent subfamily, scanned in the given order."""
    chosen: list[int] = []
    rows: list[Vector] = []
    current = 0
    for index, v in enumerate(vectors):
        if current == dim:
            break
        candidate = rank([*rows, v]) if rows else (0 if all(a == 0 for a in v) else 1)
        if candidate > current:
            rows.append(v)
            chosen.append(index)
            current = candidate
    return chosen


@lru_cache(maxsize=512)
def radical(space: FormSpace) -> tuple[Vector, ...]:
    """Basis of the radical {v : (v, w) = 0 for all w} of the form."""
    return tuple(nullspace(space.gram, space.dim))


@lru_cache(maxsize=512)
def build_quotient_map(space: FormSpace) -> QuotientMap:
    """The canonical projection onto the quotient by the radical.

    The matrix consists of the nonzero rows of the reduced echelon form of
    the Gram matrix, so its kernel is the radical. The target basis is
    labelled by the pivot labels and carries the Gram submatrix on the
    pivot columns.
    """
    echelon = row_echelon(space.gram, space.dim)
    pivots = echelon.pivots
    labels = tuple(space.basis_labels[p] for p in pivots)
    gram = tuple(tuple(space.gram[p][q] for q in pivots) for p in pivots)
    target = FormSpace(labels, gram)
    logger.debug("Quotient of %d-dim space has dimension %d", space.dim, len(pivots))
    return QuotientMap(source=space, target=target, matrix=echelon.rows, pivots=pivots)


@dataclass(frozen=True)
class SpanRestriction:
    """A family of vectors re-expressed in a basis of their span."""

    space: FormSpace
    basis: tuple[Vector, ...]
    coords: tuple[Vector, ...]


def restrict_to_span(
    space: FormSpace, vectors: Sequence[Vector], basis: Sequence[Vector] | None = None
) -> SpanRestriction:
    """Restrict the form to the span of ``vectors``.

    Args:
        space: Ambient space.
        vectors: Vectors whose span is taken.
        basis: Optional explicit basis of the span; by default a greedy
            independent subfamily of ``vectors`` is used.

    Returns:
        The restricted space (labelled by the formatted basis vectors), the
        basis in ambient coordinates and the coordinates of every input vector.

    Raises:
        InvalidInputError: If an explicit basis does not span the vectors.
    """
    if basis is None:
        basis = [vectors[i] for i in greedy_basis(vectors, space.dim)]
    basis = tuple(basis)
    coords_of = LinearCoordinates(basis, space.dim)
    coords: list[Vector] = []
    for v in vectors:
        c = coords_of(v)
        if c is None:
            msg = f"Vector {space.format(v)} is outside the given basis span"
            raise InvalidInputError(msg)
        coords.append(c)
    labels = tuple(space.format(b) for b in basis)
    gram = tuple(tuple(space.form(b, c) for c in basis) for b in basis)
    return SpanRestriction(space=FormSpace(labels, gram), basis=basis, coords=tuple(coords))


def fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    """Largest g > 0 with every value an integer multiple of g (0 for all zeros)."""
    nums = [Fraction(v) for v in values if v != 0]
    if not nums:
        return Fraction(0)
    denominator = math.lcm(*(v.denominator for v in nums))
    numerator = math.gcd(*(int(v * denominator) for v in nums))
    return Fraction(numerator, denominator)


def fraction_lcm(values: Iterable[Fraction]) -> Fraction:
    """Smallest l > 0 that is an integer multiple of every nonzero value."""
    nums = [abs(Fraction(v)) for v in values if v != 0]
    if not nums:
        return Fraction(0)
    numerator = math.lcm(*(v.numerator for v in nums))
    denominator = math.gcd(*(v.denominator for v in nums))
    return Fraction(numerator, denominator)

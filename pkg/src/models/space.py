"""Exact rational vectors and spaces carrying a symmetric bilinear form."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from src.errors import InvalidInputError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def to_fraction(value: object) -> Fraction:
    """Convert an int, Fraction or "p/q" string into an exact rational.

    Raises:
        InvalidInputError: If the value is not an exact rational literal.
    """
    if isinstance(value, bool):
        msg = f"Boolean is not a rational: {value!r}"
        raise InvalidInputError(msg)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL.match(text):
            msg = f"Malformed rational {value!r}; expected 'p' or 'p/q'"
            raise InvalidInputError(msg)
        try:
            return Fraction(text)
        except ZeroDivisionError as exc:
            msg = f"Zero denominator in rational {value!r}"
            raise InvalidInputError(msg) from exc
    msg = f"Unsupported rational value {value!r}"
    raise InvalidInputError(msg)


def format_rational(value: Fraction) -> str:
    """Render a rational as "p" or "p/q" in lowest terms."""
    return str(value)


def vector(*values: object) -> Vector:
    """Build a vector from ints, Fractions or rational strings."""
    return tuple(to_fraction(v) for v in values)


def zero_vector(dim: int) -> Vector:
    return (Fraction(0),) * dim


def unit_vector(dim: int, index: int) -> Vector:
    return tuple(Fraction(1) if i == index else Fraction(0) for i in range(dim))


def add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def scale(c: Fraction | int, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def neg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def is_zero(x: Vector) -> bool:
    return all(a == 0 for a in x)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """Plain coordinate dot product (no form)."""
    return sum((a * b for a, b in zip(x, y, strict=True)), Fraction(0))


def matrix_apply(matrix: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Vector:
    """Apply a row-major matrix to a column vector."""
    return tuple(dot(row, x) for row in matrix)


def proportion(x: Vector, y: Vector) -> Fraction | None:
    """Return c with y = c·x, or None when y is not a multiple of x."""
    ratio: Fraction | None = None
    for a, b in zip(x, y, strict=True):
        if a == 0:
            if b != 0:
                return None
            continue
        current = b / a
        if ratio is None:
            ratio = current
        elif ratio != current:
            return None
    return ratio


@dataclass(frozen=True)
class FormSpace:
    """A rational space with a named basis and a symmetric Gram matrix."""

    basis_labels: tuple[str, ...]
    gram: Matrix

    def __post_init__(self) -> None:
        dim = len(self.basis_labels)
        if len(set(self.basis_labels)) != dim:
            msg = f"Duplicate basis labels in {self.basis_labels}"
            raise InvalidInputError(msg)
        if len(self.gram) != dim or any(len(row) != dim for row in self.gram):
            msg = f"Gram matrix must be {dim}x{dim}"
            raise InvalidInputError(msg)
        for i in range(dim):
            for j in range(i + 1, dim):
                if self.gram[i][j] != self.gram[j][i]:
                    msg = (
                        f"Gram matrix is not symmetric at ({i}, {j}): "
                        f"{self.gram[i][j]} != {self.gram[j][i]}"
                    )
                    raise InvalidInputError(msg)

    @classmethod
    def create(
        cls, labels: Iterable[str], gram: Iterable[Iterable[object]]
    ) -> FormSpace:
        """Build a space from labels and any rational-convertible Gram rows."""
        return cls(tuple(labels), tuple(tuple(to_fraction(v) for v in row) for row in gram))

    @classmethod
    def diagonal(cls, labels: Iterable[str], entries: Iterable[object]) -> FormSpace:
        """Build a space whose basis is orthogonal with the given norms."""
        values = [to_fraction(v) for v in entries]
        rows = [
            [values[i] if i == j else Fraction(0) for j in range(len(values))]
            for i in range(len(values))
        ]
        return cls.create(labels, rows)

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def form(self, x: Vector, y: Vector) -> Fraction:
        """Evaluate the bilinear form (x, y)."""
        return dot(x, self.gram_apply(y))

    def norm(self, x: Vector) -> Fraction:
        return self.form(x, x)

    def gram_apply(self, y: Vector) -> Vector:
        """Return G·y, the covector pairing every vector with y."""
        return matrix_apply(self.gram, y)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    def scaled(self, factor: Fraction | int) -> FormSpace:
        """Same basis with the form multiplied by a nonzero factor."""
        return FormSpace(self.basis_labels, tuple(scale(factor, row) for row in self.gram))

    def extended(self, label: str) -> FormSpace:
        """Append one basis vector lying in the radical of the form."""
        rows = tuple((*row, Fraction(0)) for row in self.gram)
        rows = (*rows, zero_vector(self.dim + 1))
        return FormSpace((*self.basis_labels, label), rows)

    def direct_sum(self, other: FormSpace) -> FormSpace:
        """Orthogonal direct sum; clashing labels get a component suffix."""
        left, right = list(self.basis_labels), list(other.basis_labels)
        if set(left) & set(right):
            left = [f"{label}#1" for label in left]
            right = [f"{label}#2" for label in right]
        rows: list[Vector] = []
        for row in self.gram:
            rows.append((*row, *zero_vector(other.dim)))
        for row in other.gram:
            rows.append((*zero_vector(self.dim), *row))
        return FormSpace((*left, *right), tuple(rows))

    def check_vector(self, x: Sequence[Fraction]) -> None:
        if len(x) != self.dim:
            msg = f"Vector of length {len(x)} does not fit a space of dimension {self.dim}"
            raise InvalidInputError(msg)

    def format(self, x: Vector) -> str:
        """Render a vector as a signed combination of basis labels, e.g. "e1-d1"."""
        parts: list[str] = []
        for coeff, label in zip(x, self.basis_labels, strict=True):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            term = label if magnitude == 1 else f"{format_rational(magnitude)}*{label}"
            parts.append(f"{sign}{term}")
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


@dataclass(frozen=True)
class QuotientMap:
    """The canonical projection of a space onto the quotient by its radical."""

    source: FormSpace
    target: FormSpace
    matrix: Matrix
    pivots: tuple[int, ...]

    def apply(self, x: Vector) -> Vector:
        return matrix_apply(self.matrix, x)

    def lift(self, y: Vector) -> Vector:
        """Section of the projection supported on the pivot coordinates."""
        coords = [Fraction(0)] * self.source.dim
        for value, pivot in zip(y, self.pivots, strict=True):
            coords[pivot] = value
        return tuple(coords)

"""Explicit finite root sets living in a FormSpace."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from src.errors import InvalidInputError
from src.models.space import FormSpace, Vector, add, dot, matrix_apply, scale

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator
    from fractions import Fraction


@dataclass(frozen=True)
class FiniteRootSystem:
    """A finite set of vectors in a space, kept in lexicographic order.

    ``embedding`` optionally records the images of this space's basis
    vectors in a parent space (set by span restrictions and decompositions).
    """

    space: FormSpace
    roots: tuple[Vector, ...]
    embedding: tuple[Vector, ...] | None = None
    parent: FormSpace | None = None

    @classmethod
    def create(
        cls,
        space: FormSpace,
        roots: Iterable[Vector],
        embedding: Iterable[Vector] | None = None,
        parent: FormSpace | None = None,
    ) -> FiniteRootSystem:
        """Sort and check a root list.

        Raises:
            InvalidInputError: On duplicate roots or wrong vector lengths.
        """
        ordered = sorted(tuple(r) for r in roots)
        for r in ordered:
            space.check_vector(r)
        for a, b in zip(ordered, ordered[1:], strict=False):
            if a == b:
                msg = f"Duplicate root {space.format(a)}"
                raise InvalidInputError(msg)
        emb = tuple(tuple(v) for v in embedding) if embedding is not None else None
        if emb is not None and len(emb) != space.dim:
            msg = "Embedding must give one image per basis vector"
            raise InvalidInputError(msg)
        return cls(space=space, roots=tuple(ordered), embedding=emb, parent=parent)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.roots)

    def __contains__(self, item: object) -> bool:
        return item in self.root_set

    @cached_property
    def root_set(self) -> frozenset[Vector]:
        return frozenset(self.roots)

    @cached_property
    def positions(self) -> dict[Vector, int]:
        return {r: i for i, r in enumerate(self.roots)}

    def index(self, root: Vector) -> int:
        try:
            return self.positions[root]
        except KeyError as exc:
            msg = f"{self.space.format(root)} is not a root"
            raise InvalidInputError(msg) from exc

    @property
    def dim(self) -> int:
        return self.space.dim

    def form(self, x: Vector, y: Vector) -> Fraction:
        return self.space.form(x, y)

    @cached_property
    def covectors(self) -> tuple[Vector, ...]:
        """G·α for every root α, in root order."""
        return tuple(self.space.gram_apply(r) for r in self.roots)

    @cached_property
    def norms(self) -> tuple[Fraction, ...]:
        return tuple(dot(r, c) for r, c in zip(self.roots, self.covectors, strict=True))

    @cached_property
    def pairing_table(self) -> tuple[tuple[Fraction, ...], ...]:
        """Matrix of pairings (α_i, α_j) in root order."""
        return tuple(tuple(dot(r, c) for c in self.covectors) for r in self.roots)

    @cached_property
    def isotropic(self) -> tuple[Vector, ...]:
        return tuple(r for r, n in zip(self.roots, self.norms, strict=True) if n == 0)

    def format(self, x: Vector) -> str:
        return self.space.format(x)

    def embed(self, x: Vector) -> Vector:
        """Image of a vector of this space in the parent space."""
        if self.embedding is None:
            return x
        result = tuple(0 * a for a in self.embedding[0]) if self.embedding else ()
        for coeff, image in zip(x, self.embedding, strict=True):
            if coeff:
                result = add(result, scale(coeff, image))
        return result

    def label(self, x: Vector) -> str:
        """Format a vector in parent coordinates when an embedding is known."""
        if self.embedding is None or self.parent is None:
            return self.format(x)
        return self.parent.format(self.embed(x))

    def with_roots(self, roots: Iterable[Vector]) -> FiniteRootSystem:
        return FiniteRootSystem.create(self.space, roots, self.embedding, self.parent)

    def transformed(self, matrix: tuple[Vector, ...], space: FormSpace) -> FiniteRootSystem:
        """Push the roots through a linear map into another space."""
        return FiniteRootSystem.create(space, (matrix_apply(matrix, r) for r in self.roots))


@dataclass(frozen=True)
class ReflectionPermutation:
    """The permutation of a root list induced by the reflection r_α."""

    root: Vector
    images: tuple[int, ...]

    def __call__(self, index: int) -> int:
        return self.images[index]

    @property
    def is_involution(self) -> bool:
        return all(self.images[j] == i for i, j in enumerate(self.images))

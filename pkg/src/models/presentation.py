"""Fiber presentations of affine generalized root systems."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING

from src.errors import InvalidInputError
from src.models.space import FormSpace, Vector, neg, to_fraction
from src.models.system import FiniteRootSystem

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator


def _mod(value: Fraction, step: Fraction) -> Fraction:
    return value - step * math.floor(value / step)


@dataclass(frozen=True)
class Fiber:
    """Offsets along δ over one base class.

    With ``step > 0`` the fiber is the union of ``r + step·Z`` over the
    residues; with ``step == 0`` it is the finite list of residues.
    """

    base_class: Vector
    step: Fraction
    residues: tuple[Fraction, ...]

    @classmethod
    def create(cls, base_class: Vector, step: object, residues: Iterable[object]) -> Fiber:
        """Reduce residues modulo the step and sort them.

        Raises:
            InvalidInputError: On offsets that are not exact rationals, a
                negative step, no residues, or residues that coincide
                modulo the step.
        """
        k = to_fraction(step)
        if k < 0:
            msg = f"Fiber step must be >= 0, got {k}"
            raise InvalidInputError(msg)
        values = [to_fraction(r) for r in residues]
        if not values:
            msg = "A fiber needs at least one residue"
            raise InvalidInputError(msg)
        reduced = [_mod(r, k) for r in values] if k > 0 else values
        if len(set(reduced)) != len(reduced):
            msg = f"Residues {[str(r) for r in values]} are not distinct modulo {k}"
            raise InvalidInputError(msg)
        return cls(base_class=tuple(base_class), step=k, residues=tuple(sorted(reduced)))

    @property
    def is_finite(self) -> bool:
        return self.step == 0

    def contains(self, offset: Fraction) -> bool:
        if self.step == 0:
            return offset in self.residues
        return _mod(offset, self.step) in self.residues

    def negated(self) -> Fiber:
        """Fiber over -α with negated offsets."""
        return Fiber.create(neg(self.base_class), self.step, (-r for r in self.residues))

    def shifted(self, amount: Fraction) -> Fiber:
        return Fiber.create(self.base_class, self.step, (r + amount for r in self.residues))

    def rescaled(self, factor: Fraction) -> Fiber:
        """Offsets measured in a unit ``factor`` times larger (divide by factor)."""
        return Fiber.create(
            self.base_class, self.step / abs(factor), (r / factor for r in self.residues)
        )

    def relabelled(self, base_class: Vector) -> Fiber:
        return Fiber(base_class=base_class, step=self.step, residues=self.residues)

    def coarsened(self) -> Fiber:
        """Same offset set written with the smallest possible step."""
        if self.step == 0 or len(self.residues) == 1:
            return self
        count = len(self.residues)
        for parts in range(count, 1, -1):
            if count % parts:
                continue
            period = self.step / parts
            shifted = sorted(_mod(r + period, self.step) for r in self.residues)
            if tuple(shifted) == self.residues:
                kept = sorted({_mod(r, period) for r in self.residues})
                return Fiber(self.base_class, period, tuple(kept)).coarsened()
        return self

    def representatives(self, modulus: Fraction, far: Fraction | None = None) -> list[Fraction]:
        """Offsets covering every class of the fiber modulo ``modulus``.

        For infinite fibers with ``far`` given, one extra offset beyond
        ``far`` is added per residue.
        """
        if self.step == 0:
            return list(self.residues)
        reps: list[Fraction] = []
        if modulus > 0:
            lcm = Fraction(
                math.lcm(modulus.numerator, self.step.numerator),
                math.gcd(modulus.denominator, self.step.denominator),
            )
            copies = int(lcm / self.step)
        else:
            copies = 1
        for r in self.residues:
            reps.extend(r + self.step * s for s in range(copies))
        if far is not None:
            jumps = math.ceil(far / self.step)
            reps.extend(r + self.step * jumps for r in self.residues)
        return reps

    def offsets_within(self, bound: Fraction) -> list[Fraction]:
        """All offsets o of the fiber with |o| <= bound, ascending."""
        if self.step == 0:
            return sorted(r for r in self.residues if abs(r) <= bound)
        found: list[Fraction] = []
        for r in self.residues:
            lo = math.ceil((-bound - r) / self.step)
            hi = math.floor((bound - r) / self.step)
            found.extend(r + self.step * s for s in range(lo, hi + 1))
        return sorted(found)

    @property
    def max_abs_residue(self) -> Fraction:
        return max(abs(r) for r in self.residues)


@dataclass(frozen=True)
class AffinePresentation:
    """A base system together with one fiber per base root.

    The total space is the base space extended by a radical direction δ.
    """

    base: FiniteRootSystem
    fibers: tuple[Fiber, ...]
    delta_label: str = "delta"

    @classmethod
    def create(
        cls,
        base: FiniteRootSystem,
        fibers: Iterable[Fiber] | Mapping[Vector, Fiber],
        delta_label: str = "delta",
    ) -> AffinePresentation:
        """Align fibers with the sorted base roots.

        Raises:
            InvalidInputError: If fibers do not cover every base root exactly once.
        """
        items = list(fibers.values()) if isinstance(fibers, Mapping) else list(fibers)
        by_class: dict[Vector, Fiber] = {}
        for fiber in items:
            if fiber.base_class in by_class:
                msg = f"Two fibers over class {base.format(fiber.base_class)}"
                raise InvalidInputError(msg)
            by_class[fiber.base_class] = fiber
        missing = [r for r in base.roots if r not in by_class]
        extra = [c for c in by_class if c not in base]
        if missing or extra:
            culprit = missing[0] if missing else extra[0]
            msg = f"Fibers must cover each base class exactly once (offending class {base.format(culprit)})"
            raise InvalidInputError(msg)
        if delta_label in base.space.basis_labels:
            msg = f"δ label {delta_label!r} clashes with a base label"
            raise InvalidInputError(msg)
        return cls(base=base, fibers=tuple(by_class[r] for r in base.roots), delta_label=delta_label)

    def __iter__(self) -> Iterator[Fiber]:
        return iter(self.fibers)

    def fiber(self, base_class: Vector) -> Fiber:
        return self.fibers[self.base.index(base_class)]

    def fiber_or_none(self, base_class: Vector) -> Fiber | None:
        position = self.base.positions.get(base_class)
        return None if position is None else self.fibers[position]

    @property
    def classes(self) -> tuple[Vector, ...]:
        return self.base.roots

    @cached_property
    def total_space(self) -> FormSpace:
        return self.base.space.extended(self.delta_label)

    @property
    def is_finite(self) -> bool:
        return all(f.is_finite for f in self.fibers)

    @property
    def steps(self) -> tuple[Fraction, ...]:
        return tuple(f.step for f in self.fibers)

    def lift(self, base_class: Vector, offset: Fraction) -> Vector:
        return (*base_class, offset)

    def split(self, vector: Vector) -> tuple[Vector, Fraction]:
        """Split a total-space vector into (class, offset)."""
        return tuple(vector[:-1]), vector[-1]

    def contains(self, vector: Vector) -> bool:
        """Symbolic membership of a total-space vector."""
        base_class, offset = self.split(vector)
        fiber = self.fiber_or_none(base_class)
        return fiber is not None and fiber.contains(offset)

    def format(self, vector: Vector) -> str:
        return self.total_space.format(vector)

    def format_lift(self, base_class: Vector, offset: Fraction) -> str:
        return self.format(self.lift(base_class, offset))

    def with_fibers(self, fibers: Iterable[Fiber]) -> AffinePresentation:
        return AffinePresentation.create(self.base, fibers, self.delta_label)

    def roots_within(self, bound: Fraction | int) -> list[Vector]:
        limit = Fraction(bound)
        found: list[Vector] = []
        for fiber in self.fibers:
            found.extend(self.lift(fiber.base_class, o) for o in fiber.offsets_within(limit))
        return sorted(found)

    def explicit_system(self) -> FiniteRootSystem:
        """All roots of a finite presentation as an explicit system.

        Raises:
            InvalidInputError: If some fiber is infinite.
        """
        if not self.is_finite:
            msg = "Only presentations with finite fibers have an explicit root list"
            raise InvalidInputError(msg)
        roots = [self.lift(f.base_class, r) for f in self.fibers for r in f.residues]
        return FiniteRootSystem.create(self.total_space, roots)

    @property
    def max_step(self) -> Fraction:
        return max((f.step for f in self.fibers), default=Fraction(0))

    @property
    def max_abs_residue(self) -> Fraction:
        return max((f.max_abs_residue for f in self.fibers), default=Fraction(0))


@dataclass(frozen=True)
class KFunction:
    """Fiber steps of a normalized presentation, keyed by base class."""

    classes: tuple[Vector, ...]
    values: tuple[int, ...]

    def __getitem__(self, base_class: Vector) -> int:
        return self.values[self.classes.index(base_class)]

    def as_dict(self) -> dict[Vector, int]:
        return dict(zip(self.classes, self.values, strict=True))

    @property
    def gcd(self) -> int:
        return math.gcd(*self.values)

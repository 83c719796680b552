"""Affine linear systems over GF(2) with variables packed into int bitsets."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field


@dataclass(frozen=True)
class GF2Solution:
    """Solution set ``particular + span(basis)`` of a consistent system."""

    width: int
    particular: int
    basis: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def count(self) -> int:
        return 1 << len(self.basis)

    def __iter__(self) -> Iterator[int]:
        """Yield every solution, in Gray-code order starting from the particular one."""
        current = self.particular
        yield current
        for step in range(1, self.count):
            current ^= self.basis[(step & -step).bit_length() - 1]
            yield current


@dataclass
class GF2System:
    """Equations ``<mask, x> = rhs`` over ``width`` unknowns.

    Bit i of a mask (or a solution) stands for unknown i.
    """

    width: int
    _rows: list[tuple[int, int]] = field(default_factory=list)

    def add(self, mask: int, rhs: int = 0) -> None:
        self._rows.append((mask, rhs & 1))

    def fix(self, index: int, value: int) -> None:
        self.add(1 << index, value)

    def __len__(self) -> int:
        return len(self._rows)

    def solve(self) -> GF2Solution | None:
        """Gauss-Jordan elimination; None when the system is inconsistent."""
        rows = list(self._rows)
        pivots: list[tuple[int, int, int]] = []
        for col in range(self.width):
            bit = 1 << col
            hit = next((i for i, (mask, _) in enumerate(rows) if mask & bit), None)
            if hit is None:
                continue
            p_mask, p_rhs = rows.pop(hit)
            rows = [(m ^ p_mask, r ^ p_rhs) if m & bit else (m, r) for m, r in rows]
            pivots = [
                (c, m ^ p_mask, r ^ p_rhs) if m & bit else (c, m, r) for c, m, r in pivots
            ]
            pivots.append((col, p_mask, p_rhs))
        if any(rhs for mask, rhs in rows if mask == 0):
            return None
        pivot_cols = {c for c, _, _ in pivots}
        particular = 0
        for c, _, r in pivots:
            if r:
                particular |= 1 << c
        basis: list[int] = []
        for free in range(self.width):
            if free in pivot_cols:
                continue
            vec = 1 << free
            for c, m, _ in pivots:
                if m & (1 << free):
                    vec |= 1 << c
            basis.append(vec)
        return GF2Solution(self.width, particular, tuple(basis))

    def satisfied_by(self, x: int) -> bool:
        return all((mask & x).bit_count() % 2 == rhs for mask, rhs in self._rows)


def bits_of(x: int, width: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(width))


__all__ = ["GF2Solution", "GF2System", "bits_of"]

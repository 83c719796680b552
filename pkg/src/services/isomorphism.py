"""Isomorphism search with form scaling, for finite systems and affine presentations."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import networkx as nx

from src.models.presentation import AffinePresentation, Fiber
from src.models.space import Matrix, Vector, dot, matrix_apply, unit_vector
from src.models.system import FiniteRootSystem
from src.services.affsys import normalize_delta
from src.services.exactlin import LinearCoordinates, greedy_basis
from src.services.finsys import nonorthogonality_graph

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator, Sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IsoWitness:
    """A linear map ψ with ψ(R1) = R2 and (ψv, ψw) = scale·(v, w).

    ``matrix`` is row-major from the first space to the second;
    ``root_map[i]`` is the index in R2 of the image of the i-th root of R1.
    """

    matrix: Matrix
    scale: Fraction
    root_map: tuple[int, ...]

    def apply(self, x: Vector) -> Vector:
        return matrix_apply(self.matrix, x)


@dataclass(frozen=True)
class AffineIsoWitness:
    """Fiber-level isomorphism α + xδ ↦ ψ(α) + (μ·x + λ(α))δ between normalized presentations.

    For finite presentations ``base`` is a witness between the explicit
    systems and ``mu``/``shift`` are trivial.
    """

    base: IsoWitness
    mu: int
    shift: Vector


# ── Finite systems ──


def _bfs_order(R: FiniteRootSystem) -> list[int]:
    graph = nonorthogonality_graph(R.pairing_table)
    order: list[int] = []
    seen: set[int] = set()
    for start in range(len(R)):
        if start in seen:
            continue
        for node in nx.bfs_tree(graph, start):
            order.append(node)
            seen.add(node)
    return order


def _profile(row: Sequence[Fraction], factor: Fraction) -> tuple[Fraction, ...]:
    return tuple(sorted(factor * p for p in row))


def scale_candidates(R1: FiniteRootSystem, R2: FiniteRootSystem) -> list[Fraction]:
    """Scales a with a·(norms of R1) = norms of R2 as multisets.

    When every root is isotropic the pairing multisets are compared instead.
    """
    norms1 = Counter(R1.norms)
    norms2 = Counter(R2.norms)
    values1 = [n for n in norms1 if n != 0]
    values2 = [n for n in norms2 if n != 0]
    use_pairings = not values1 and not values2
    if use_pairings:
        pairs1 = Counter(p for row in R1.pairing_table for p in row)
        pairs2 = Counter(p for row in R2.pairing_table for p in row)
        values1 = [p for p in pairs1 if p != 0]
        values2 = [p for p in pairs2 if p != 0]
        norms1, norms2 = pairs1, pairs2
    if not values1 or not values2:
        return [Fraction(1)] if not values1 and not values2 else []
    found: list[Fraction] = []
    for a in sorted({b / values1[0] for b in values2}, key=lambda x: (abs(x), x < 0)):
        if Counter({a * k: v for k, v in norms1.items()}) == norms2:
            found.append(a)
    logger.debug("Scale candidates %s", [str(a) for a in found])
    return found


def span_matrix(
    basis: Sequence[Vector], images: Sequence[Vector], dim_from: int, dim_to: int
) -> Matrix:
    """Matrix sending basis[i] to images[i]; coordinates outside the span map to 0."""
    coords_of = LinearCoordinates(basis, dim_from)
    columns: list[Vector] = []
    for j in range(dim_from):
        c = coords_of(unit_vector(dim_from, j))
        if c is None:
            columns.append(tuple(Fraction(0) for _ in range(dim_to)))
            continue
        column = [Fraction(0)] * dim_to
        for weight, image in zip(c, images, strict=True):
            if weight:
                for k, value in enumerate(image):
                    column[k] += weight * value
        columns.append(tuple(column))
    return tuple(tuple(columns[j][i] for j in range(dim_from)) for i in range(dim_to))


def find_isomorphisms(
    R1: FiniteRootSystem,
    R2: FiniteRootSystem,
    compatible: Callable[[IsoWitness], bool] | None = None,
) -> Iterator[IsoWitness]:
    """Yield isomorphisms R1 → R2 (with form scaling) found by backtracking.

    A basis of span(R1) is taken greedily in breadth-first order over the
    non-orthogonality graph. Basis roots are assigned images with matching
    pairing profiles and Gram entries; every root whose coordinates are
    complete at the current level must land on an unused root of R2.

    Args:
        R1: Source system.
        R2: Target system.
        compatible: Optional filter applied to each complete witness.
    """
    if len(R1) != len(R2) or not R1.roots:
        return
    order = _bfs_order(R1)
    picked = greedy_basis([R1.roots[i] for i in order], R1.dim)
    basis_idx = [order[i] for i in picked]
    if len(basis_idx) != len(greedy_basis(list(R2.roots), R2.dim)):
        return
    basis = [R1.roots[i] for i in basis_idx]
    coords_of = LinearCoordinates(basis, R1.dim)
    coords = [coords_of(r) for r in R1.roots]
    levels: list[list[int]] = [[] for _ in basis]
    for i, c in enumerate(coords):
        assert c is not None
        last = max(k for k, v in enumerate(c) if v != 0)
        levels[last].append(i)
    table1, table2 = R1.pairing_table, R2.pairing_table
    profiles2: dict[tuple[Fraction, ...], list[int]] = {}

    for a in scale_candidates(R1, R2):
        profiles2.clear()
        for j, row in enumerate(table2):
            profiles2.setdefault(_profile(row, Fraction(1)), []).append(j)
        options = [profiles2.get(_profile(table1[b], a), []) for b in basis_idx]
        if any(not o for o in options):
            continue
        images: list[int] = []
        image_of: dict[int, int] = {}

        def extend(level: int, a: Fraction = a, options: list[list[int]] = options) -> Iterator[IsoWitness]:
            if level == len(basis_idx):
                vectors = [R2.roots[j] for j in images]
                matrix = span_matrix(basis, vectors, R1.dim, R2.dim)
                root_map = tuple(image_of[i] for i in range(len(R1)))
                witness = IsoWitness(matrix=matrix, scale=a, root_map=root_map)
                if compatible is None or compatible(witness):
                    yield witness
                return
            b = basis_idx[level]
            for j in options[level]:
                if any(table2[j][images[k]] != a * table1[b][basis_idx[k]] for k in range(level)):
                    continue
                images.append(j)
                added: list[int] = []
                used = set(image_of.values())
                ok = True
                for i in levels[level]:
                    c = coords[i]
                    assert c is not None
                    target = [Fraction(0)] * R2.dim
                    for weight, k in zip(c, images, strict=False):
                        if weight:
                            for t, value in enumerate(R2.roots[k]):
                                target[t] += weight * value
                    position = R2.positions.get(tuple(target))
                    if position is None or position in used:
                        ok = False
                        break
                    image_of[i] = position
                    used.add(position)
                    added.append(i)
                if ok:
                    yield from extend(level + 1)
                for i in added:
                    del image_of[i]
                images.pop()

        yield from extend(0)


def isomorphic(R1: FiniteRootSystem, R2: FiniteRootSystem) -> IsoWitness | None:
    """First isomorphism R1 → R2 with form scaling, or None."""
    witness = next(find_isomorphisms(R1, R2), None)
    logger.debug("Isomorphism search on %d roots: %s", len(R1), "found" if witness else "none")
    return witness


def verify_witness(R1: FiniteRootSystem, R2: FiniteRootSystem, witness: IsoWitness) -> bool:
    """Exact check of the witness invariants on R1 and R2."""
    images = [witness.apply(r) for r in R1.roots]
    if sorted(images) != list(R2.roots):
        return False
    if any(R2.positions[img] != j for img, j in zip(images, witness.root_map, strict=True)):
        return False
    return all(
        R2.form(images[i], images[j]) == witness.scale * R1.form(R1.roots[i], R1.roots[j])
        for i in range(len(R1))
        for j in range(i, len(R1))
    )


# ── Affine presentations ──


def _map_fiber(fiber: Fiber, target_class: Vector, mu: int, shift: Fraction) -> Fiber:
    return Fiber.create(target_class, fiber.step, (mu * r + shift for r in fiber.residues))


def _shift_periods(P: AffinePresentation, coords: Sequence[Vector], basis_fibers: Sequence[Fiber]) -> list[int]:
    """How many step-multiples of each basis shift value are distinct modulo every class step."""
    periods: list[int] = []
    for i, fb in enumerate(basis_fibers):
        period = 1
        if fb.step:
            for fiber, c in zip(P.fibers, coords, strict=True):
                if c[i] and fiber.step:
                    period = math.lcm(period, (c[i] * fb.step / fiber.step).denominator)
        periods.append(period)
    return periods


def _solve_shift(
    P1: AffinePresentation, P2: AffinePresentation, witness: IsoWitness, mu: int
) -> Vector | None:
    """Find λ on the base of P1 with μ·F1(α) + λ(α) = F2(ψα) for every class."""
    base = P1.base
    picked = greedy_basis(list(base.roots), base.dim)
    basis = [base.roots[i] for i in picked]
    coords_of = LinearCoordinates(basis, base.dim)
    coords = [coords_of(r) for r in base.roots]
    if any(c is None for c in coords):
        return None
    full = [c for c in coords if c is not None]
    levels: list[list[int]] = [[] for _ in basis]
    for i, c in enumerate(full):
        levels[max(k for k, v in enumerate(c) if v != 0)].append(i)
    targets = [P2.fibers[j] for j in witness.root_map]
    basis_fibers = [P1.fibers[i] for i in picked]
    periods = _shift_periods(P1, full, basis_fibers)
    values: list[Fraction] = []

    def candidates(level: int) -> list[Fraction]:
        source = basis_fibers[level]
        target = targets[picked[level]]
        x0 = source.residues[0]
        found: list[Fraction] = []
        for y in target.residues:
            found.extend(y - mu * x0 + source.step * j for j in range(periods[level]))
        return found

    def extend(level: int) -> bool:
        if level == len(basis):
            return True
        for value in candidates(level):
            values.append(value)
            if all(
                _map_fiber(P1.fibers[i], targets[i].base_class, mu, dot(full[i], values + [Fraction(0)] * (len(basis) - len(values))))
                == targets[i]
                for i in levels[level]
            ) and extend(level + 1):
                return True
            values.pop()
        return False

    if not extend(0):
        return None
    # λ as a covector on the base coordinates
    dual: list[Fraction] = []
    for k in range(base.dim):
        c = coords_of(unit_vector(base.dim, k))
        dual.append(dot(c, values) if c is not None else Fraction(0))
    return tuple(dual)


def isomorphic_affine(P1: AffinePresentation, P2: AffinePresentation) -> AffineIsoWitness | None:
    """Fiber-level isomorphism between two presentations, or None.

    Both sides are normalized first. Base isomorphisms must preserve fiber
    steps and residue counts; for each one and each sign μ of δ, a shift
    functional λ is searched by backtracking over a basis of classes.
    """
    if P1.is_finite != P2.is_finite:
        return None
    if P1.is_finite:
        explicit = isomorphic(P1.explicit_system(), P2.explicit_system())
        if explicit is None:
            return None
        return AffineIsoWitness(base=explicit, mu=1, shift=())
    N1, N2 = normalize_delta(P1), normalize_delta(P2)
    if sorted((f.step, len(f.residues)) for f in N1.fibers) != sorted(
        (f.step, len(f.residues)) for f in N2.fibers
    ):
        return None

    def compatible(witness: IsoWitness) -> bool:
        return all(
            N1.fibers[i].step == N2.fibers[j].step
            and len(N1.fibers[i].residues) == len(N2.fibers[j].residues)
            for i, j in enumerate(witness.root_map)
        )

    tried = 0
    for witness in find_isomorphisms(N1.base, N2.base, compatible):
        tried += 1
        for mu in (1, -1):
            shift = _solve_shift(N1, N2, witness, mu)
            if shift is not None:
                logger.debug("Affine isomorphism after %d base witnesses (mu=%d)", tried, mu)
                return AffineIsoWitness(base=witness, mu=mu, shift=shift)
    logger.debug("No affine isomorphism after %d base witnesses", tried)
    return None

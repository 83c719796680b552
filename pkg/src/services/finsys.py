"""Finite root system service: axioms, reflections, orbits, generation, decomposition."""

from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from typing import TYPE_CHECKING

import networkx as nx

from src.config import Settings, get_settings
from src.errors import AmbiguousReflectionError, DomainError, InvalidInputError
from src.models.space import Vector, add, is_zero, neg, scale, sub
from src.models.system import FiniteRootSystem, ReflectionPermutation
from src.schemas.report import WEAK_AXIOMS, AxiomId, AxiomReport, Violation
from src.services.exactlin import radical, rank, restrict_to_span

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

logger = logging.getLogger(__name__)


class ViolationCollector:
    """Accumulates violations, keeping at most ``cap`` witnesses per axiom."""

    def __init__(self, cap: int) -> None:
        self.cap = cap
        self.violations: list[Violation] = []
        self._counts: Counter[AxiomId] = Counter()

    def add(self, axiom: AxiomId, witness: Sequence[str], detail: str = "") -> None:
        self._counts[axiom] += 1
        if self._counts[axiom] <= self.cap:
            self.violations.append(Violation(axiom=axiom, witness=list(witness), detail=detail))

    def failed(self, axiom: AxiomId) -> bool:
        return self._counts[axiom] > 0

    def any_failed(self, axioms: Iterable[AxiomId]) -> bool:
        return any(self._counts[a] > 0 for a in axioms)


def direction_key(x: Vector) -> Vector:
    """Representative of the line through x, scaled so its first nonzero entry is 1."""
    for a in x:
        if a != 0:
            return scale(1 / a, x)
    return x


def nonorthogonality_graph(table: Sequence[Sequence[Fraction]]) -> nx.Graph:
    """Graph on root indices joining i and j whenever (α_i, α_j) ≠ 0."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(table)))
    for i, row in enumerate(table):
        for j in range(i + 1, len(row)):
            if row[j] != 0:
                graph.add_edge(i, j)
    return graph


def sorted_components(graph: nx.Graph) -> list[list[int]]:
    """Connected components as sorted index lists, ordered by smallest index."""
    return sorted(sorted(c) for c in nx.connected_components(graph))


def check_axioms(R: FiniteRootSystem, settings: Settings | None = None) -> AxiomReport:
    """Check the RS / GRS / weak GRS axioms on an explicit finite system.

    Args:
        R: The system to check.
        settings: Supplies the per-axiom witness cap.

    Returns:
        An AxiomReport whose false flags each carry at least one violation.

    Raises:
        InvalidInputError: If the root set is empty.
    """
    if not R.roots:
        msg = "Cannot check axioms on an empty root set"
        raise InvalidInputError(msg)
    settings = settings or get_settings()
    log = ViolationCollector(settings.max_violations_per_axiom)
    fmt = R.label
    roots = R.roots
    table = R.pairing_table
    norms = R.norms

    if any(is_zero(r) for r in roots):
        log.add(AxiomId.NONZERO_SPAN, ["0"], "the zero vector is a root")
    span = rank(roots)
    if span < R.dim:
        log.add(AxiomId.NONZERO_SPAN, [], f"roots span {span} of {R.dim} dimensions")
    rad = radical(R.space)
    if rad:
        log.add(AxiomId.NONDEGENERATE, [R.format(rad[0])], "the form is degenerate")

    checked = 0
    for i, alpha in enumerate(roots):
        n = norms[i]
        if n == 0 and is_zero(alpha):
            continue
        if n == 0 and neg(alpha) not in R:
            log.add(AxiomId.WEAK_ODD_REFLECTION, [fmt(alpha)], "-α is not a root")
        for j, beta in enumerate(roots):
            p = table[i][j]
            if p == 0:
                continue
            checked += 1
            if n != 0:
                c = 2 * p / n
                if c.denominator != 1:
                    log.add(
                        AxiomId.EVEN_REFLECTION,
                        [fmt(alpha), fmt(beta)],
                        f"2(α,β)/(α,α) = {c} is not an integer",
                    )
                    continue
                image = sub(beta, scale(c, alpha))
                if image not in R:
                    log.add(
                        AxiomId.EVEN_REFLECTION,
                        [fmt(alpha), fmt(beta), fmt(image)],
                        "r_α(β) is not a root",
                    )
                continue
            plus = add(beta, alpha) in R
            minus = sub(beta, alpha) in R
            if plus and minus:
                log.add(AxiomId.ODD_REFLECTION, [fmt(alpha), fmt(beta)], "both β+α and β-α are roots")
            elif not plus and not minus:
                log.add(
                    AxiomId.WEAK_ODD_REFLECTION,
                    [fmt(alpha), fmt(beta)],
                    "neither β+α nor β-α is a root",
                )

    _check_reduced(R, log)
    components = sorted_components(nonorthogonality_graph(table))
    if len(components) > 1:
        log.add(
            AxiomId.IRREDUCIBLE,
            [fmt(roots[components[0][0]]), fmt(roots[components[1][0]])],
            f"{len(components)} orthogonal components",
        )
    if R.isotropic:
        log.add(AxiomId.ISOTROPIC, [fmt(R.isotropic[0])], "contains isotropic roots")

    weak = not log.any_failed(WEAK_AXIOMS)
    grs = weak and not log.failed(AxiomId.ODD_REFLECTION)
    report = AxiomReport(
        kind="finite",
        is_rs=grs and not R.isotropic,
        is_grs=grs,
        is_weak_grs=weak,
        is_reduced=not log.failed(AxiomId.REDUCED),
        is_irreducible=not log.failed(AxiomId.IRREDUCIBLE),
        violations=log.violations,
        checked=checked,
    )
    logger.debug(
        "Checked %d pairs on %d roots: weak=%s grs=%s", checked, len(roots), weak, grs
    )
    return report


def _check_reduced(R: FiniteRootSystem, log: ViolationCollector) -> None:
    lines: dict[Vector, list[Vector]] = {}
    for r in R.roots:
        if not is_zero(r):
            lines.setdefault(direction_key(r), []).append(r)
    for members in lines.values():
        if len(members) <= 2:
            continue
        # shortest member against a proper multiple
        members.sort(key=lambda v: abs(next(a for a in v if a != 0)))
        log.add(
            AxiomId.REDUCED,
            [R.label(members[0]), R.label(members[-1])],
            "a root has a proper multiple in R",
        )


def reflect(R: FiniteRootSystem, alpha: Vector, beta: Vector) -> Vector:
    """Apply the reflection r_α to β.

    Raises:
        InvalidInputError: If α or β is not a root.
        AmbiguousReflectionError: If α is isotropic and the odd reflection is
            undefined at β.
    """
    for v in (alpha, beta):
        if v not in R:
            msg = f"{R.format(v)} is not a root"
            raise InvalidInputError(msg)
    n = R.form(alpha, alpha)
    p = R.form(alpha, beta)
    if n != 0:
        return sub(beta, scale(2 * p / n, alpha))
    if p == 0:
        if beta == alpha or beta == neg(alpha):
            return neg(beta)
        return beta
    plus, minus = add(beta, alpha), sub(beta, alpha)
    hits = [v for v in (plus, minus) if v in R]
    if len(hits) != 1:
        state = "both" if hits else "neither"
        msg = (
            f"Odd reflection r_{{{R.format(alpha)}}} is undefined at {R.format(beta)}: "
            f"{state} of β±α are roots"
        )
        raise AmbiguousReflectionError(msg)
    return hits[0]


def reflection_permutation(R: FiniteRootSystem, alpha: Vector) -> ReflectionPermutation:
    """The permutation of R induced by r_α.

    Raises:
        AmbiguousReflectionError: If r_α is undefined somewhere on R.
        InvalidInputError: If r_α does not map R into itself.
    """
    images: list[int] = []
    for beta in R.roots:
        image = reflect(R, alpha, beta)
        if image not in R:
            msg = f"r_{{{R.format(alpha)}}} maps {R.format(beta)} outside R"
            raise InvalidInputError(msg)
        images.append(R.index(image))
    return ReflectionPermutation(root=alpha, images=tuple(images))


def defined_reflections(R: FiniteRootSystem) -> list[ReflectionPermutation]:
    """All reflections of R that are defined on every root."""
    result: list[ReflectionPermutation] = []
    for alpha in R.roots:
        try:
            result.append(reflection_permutation(R, alpha))
        except (AmbiguousReflectionError, InvalidInputError):
            logger.debug("Skipping undefined reflection at %s", R.format(alpha))
    return result


def weyl_orbits(R: FiniteRootSystem) -> list[tuple[Vector, ...]]:
    """Orbits of R under the generalized Weyl group, ordered by smallest root."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(R)))
    for perm in defined_reflections(R):
        graph.add_edges_from((i, j) for i, j in enumerate(perm.images) if i != j)
    return [tuple(R.roots[i] for i in comp) for comp in sorted_components(graph)]


def generate(R: FiniteRootSystem, subset: Iterable[Vector]) -> frozenset[Vector]:
    """Least superset of ``subset`` closed under its own defined reflections.

    Raises:
        InvalidInputError: If ``subset`` is not contained in R.
    """
    current = set(subset)
    outside = [v for v in current if v not in R]
    if outside:
        msg = f"{R.format(outside[0])} is not a root"
        raise InvalidInputError(msg)
    while True:
        fresh: set[Vector] = set()
        for alpha in current:
            for beta in current:
                try:
                    image = reflect(R, alpha, beta)
                except AmbiguousReflectionError:
                    continue
                if image in R and image not in current:
                    fresh.add(image)
        if not fresh:
            return frozenset(current)
        current |= fresh


def decompose(R: FiniteRootSystem) -> list[FiniteRootSystem]:
    """Irreducible components, each restricted to its own span."""
    components = sorted_components(nonorthogonality_graph(R.pairing_table))
    result: list[FiniteRootSystem] = []
    for comp in components:
        roots = [R.roots[i] for i in comp]
        restriction = restrict_to_span(R.space, roots)
        result.append(
            FiniteRootSystem.create(
                restriction.space,
                restriction.coords,
                embedding=[R.embed(b) for b in restriction.basis],
                parent=R.parent if R.embedding is not None else R.space,
            )
        )
    logger.debug("Decomposed %d roots into %d components", len(R), len(result))
    return result


def t_coeff(clR: FiniteRootSystem, alpha: Vector, beta: Vector) -> int | None:
    """Translation coefficient t_{α,β}; None where it is undefined.

    Raises:
        DomainError: If (α, β) = 0.
    """
    p = clR.form(alpha, beta)
    if p == 0:
        msg = f"t_coeff needs (α,β) ≠ 0; got ({clR.format(alpha)}, {clR.format(beta)}) = 0"
        raise DomainError(msg)
    n = clR.form(alpha, alpha)
    if n != 0:
        c = Fraction(2) * p / n
        return int(c) if c.denominator == 1 else None
    double = scale(2, alpha)
    if add(beta, double) in clR or sub(beta, double) in clR:
        return None
    plus = add(beta, alpha) in clR
    minus = sub(beta, alpha) in clR
    if plus == minus:
        return None
    return -1 if plus else 1

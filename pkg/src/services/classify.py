"""Classification service: fingerprint, certify, and the affine decision tables."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from src.config import Settings, get_settings
from src.errors import NotApplicableError, UnclassifiableError, UnsupportedTagError
from src.models.presentation import AffinePresentation
from src.models.space import neg, scale, unit_vector
from src.models.system import FiniteRootSystem
from src.models.tag import Family, TypeTag, canonical_lambda, canonical_q, twisted_options
from src.repositories.catalog_repo import CatalogRepository
from src.services.affsys import (
    decompose_agrs,
    k_function,
    multiple_offset,
    normalize_delta,
    shift_presentation,
    transport,
    validate_agrs,
)
from src.services.exactlin import radical, rank, restrict_to_span
from src.services.finsys import check_axioms, decompose, nonorthogonality_graph, sorted_components
from src.services.isomorphism import isomorphic, isomorphic_affine

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Fingerprint:
    """Scale-invariant summary used to prune catalog candidates."""

    rank: int
    size: int
    isotropic: int
    norms: tuple[Fraction, ...]
    reduced: bool


def _normalized_norms(norms: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    nonzero = [n for n in norms if n != 0]
    if not nonzero:
        return tuple(sorted(norms))
    unit = min(abs(n) for n in nonzero)
    return min(tuple(sorted(n / unit for n in norms)), tuple(sorted(-n / unit for n in norms)))


def quotient_iso(q1: object, q2: object) -> bool:
    """Whether Ã(n,n)^(1)_q1 ≅ Ã(n,n)^(1)_q2, i.e. q1 - q2 or q1 + q2 is an integer."""
    a, b = Fraction(q1), Fraction(q2)  # type: ignore[arg-type]
    return (a - b).denominator == 1 or (a + b).denominator == 1


def finite_tags_of_rank(rank: int) -> list[TypeTag]:
    """Every valid finite catalog tag of the given rank, except D(2,1;λ)."""
    raw: list[TypeTag] = [
        TypeTag(Family.A, n=rank),
        TypeTag(Family.B, n=rank),
        TypeTag(Family.C, n=rank),
        TypeTag(Family.D, n=rank),
        TypeTag(Family.E, n=rank),
        TypeTag(Family.F, n=rank),
        TypeTag(Family.G, n=rank),
        TypeTag(Family.B0, n=rank),
        TypeTag(Family.C_SUPER, n=rank),
    ]
    if rank == 3:
        raw.append(TypeTag(Family.G3))
    if rank == 4:
        raw.append(TypeTag(Family.F4_SUPER))
    for m in range(rank):
        raw.append(TypeTag(Family.A_SUPER, m, rank - 1 - m))
    if rank % 2 == 0:
        raw.append(TypeTag(Family.A_SUPER, rank // 2, rank // 2))
    for m in range(1, rank):
        raw.extend(
            TypeTag(family, m, rank - m)
            for family in (Family.B_SUPER, Family.D_SUPER, Family.C_MN, Family.BC_MN)
        )
    found: set[TypeTag] = set()
    for tag in raw:
        try:
            found.add(tag.canonical())
        except UnsupportedTagError:
            continue
    return sorted(found, key=lambda t: t.label)


class ClassifierService:
    """Classifies explicit finite systems and affine presentations.

    Candidates are pruned with fingerprints; a tag is only returned once an
    explicit isomorphism with the catalog system has been found.
    """

    def __init__(
        self, repository: CatalogRepository | None = None, settings: Settings | None = None
    ) -> None:
        self._settings = settings or get_settings()
        self._repo = repository or CatalogRepository(self._settings)
        self._fingerprints: dict[TypeTag, Fingerprint] = {}

    @property
    def repository(self) -> CatalogRepository:
        return self._repo

    # ── Finite systems ──

    def fingerprint(self, R: FiniteRootSystem) -> Fingerprint:
        """Rank, size, isotropic count, normalized norm multiset and reducedness."""
        report = check_axioms(R, self._settings)
        return Fingerprint(
            rank=rank(R.roots),
            size=len(R),
            isotropic=len(R.isotropic),
            norms=_normalized_norms(R.norms),
            reduced=report.is_reduced,
        )

    def _catalog_fingerprint(self, tag: TypeTag) -> Fingerprint:
        if tag not in self._fingerprints:
            self._fingerprints[tag] = self.fingerprint(self._repo.finite(tag))
        return self._fingerprints[tag]

    def _d21_candidates(self, R: FiniteRootSystem) -> list[TypeTag]:
        lines = {r for r, n in zip(R.roots, R.norms, strict=True) if n != 0 and r > neg(r)}
        if len(R) != 14 or len(lines) != 3:
            return []
        norms = sorted(R.form(r, r) for r in lines)
        try:
            return [TypeTag(Family.D21, lam=canonical_lambda(norms[1] / norms[0])).canonical()]
        except UnsupportedTagError:
            return []

    def candidates(self, R: FiniteRootSystem) -> list[TypeTag]:
        """Catalog tags whose fingerprint matches R."""
        fp = self.fingerprint(R)
        tags = finite_tags_of_rank(fp.rank) + (self._d21_candidates(R) if fp.rank == 3 else [])
        hits = [t for t in tags if self._catalog_fingerprint(t) == fp]
        logger.debug("Fingerprint of %d roots matches %s", len(R), [t.label for t in hits])
        return hits

    def classify_finite(self, R: FiniteRootSystem) -> TypeTag:
        """Type of an irreducible weak GRS, or Ã(n,n) for a degenerate form.

        Raises:
            UnclassifiableError: If R is reducible or matches no catalog type.
        """
        if not R.roots:
            msg = "Cannot classify an empty system"
            raise UnclassifiableError(msg, decision_point="input")
        if rank(R.roots) < R.dim:
            restriction = restrict_to_span(R.space, list(R.roots))
            R = FiniteRootSystem.create(restriction.space, restriction.coords)
        if len(sorted_components(nonorthogonality_graph(R.pairing_table))) > 1:
            msg = "The system is reducible; classify its components"
            raise UnclassifiableError(msg, decision_point="irreducibility")
        rad = radical(R.space)
        if rad:
            return self._classify_degenerate(R, len(rad))
        for tag in self.candidates(R):
            if isomorphic(R, self._repo.finite(tag)) is not None:
                logger.info("Classified %d roots as %s", len(R), tag.label)
                return tag
        msg = f"No catalog type matches this system ({len(R)} roots, rank {R.dim})"
        raise UnclassifiableError(msg, decision_point="certification")

    def _classify_degenerate(self, R: FiniteRootSystem, radical_dim: int) -> TypeTag:
        if radical_dim != 1:
            msg = f"Radical of dimension {radical_dim}; only Ã(n,n) has a degenerate form"
            raise UnclassifiableError(msg, decision_point="radical")
        n = 1
        while 2 * n * (n + 1) + 2 * (n + 1) ** 2 < len(R):
            n += 1
        tag = TypeTag(Family.A_TILDE, n=n)
        explicit = self._repo.affine(tag).explicit_system()
        if len(explicit) == len(R) and isomorphic(R, explicit) is not None:
            logger.info("Classified degenerate system as %s", tag.label)
            return tag
        msg = f"Degenerate system of {len(R)} roots is not isomorphic to any Ã(n,n)"
        raise UnclassifiableError(msg, decision_point="finite AGRS")

    # ── Affine presentations ──

    def classify_affine(self, P: AffinePresentation) -> TypeTag:
        """Type of an irreducible AGRS given as a presentation.

        Raises:
            UnclassifiableError: If P is not an irreducible AGRS or a decision
                table has no matching entry.
        """
        report = validate_agrs(P, self._settings)
        if not report.is_grs:
            msg = "The presentation is not an AGRS"
            raise UnclassifiableError(msg, decision_point="validation")
        if not report.is_irreducible:
            msg = "The presentation is reducible; classify its components"
            raise UnclassifiableError(msg, decision_point="irreducibility")
        if P.is_finite:
            return self.classify_finite(P.explicit_system())
        normal = normalize_delta(P)
        base_tag = self.classify_finite(normal.base)
        catalog_base = self._repo.finite(base_tag)
        witness = isomorphic(normal.base, catalog_base)
        if witness is None:
            msg = f"Base lost its certificate for {base_tag.label}"
            raise UnclassifiableError(msg, decision_point="base")
        moved = transport(normal, witness.matrix, catalog_base.space)
        if base_tag.family == Family.C_MN and (base_tag.m, base_tag.n) == (1, 1):
            tag = self._peculiar_tag(moved)
        elif base_tag.family == Family.A_SUPER and base_tag.m == base_tag.n:
            tag = self._quotient_tag(moved, base_tag.n)
        else:
            tag = self._twisted_tag(moved, base_tag)
        if isomorphic_affine(P, self._repo.affine(tag)) is None:
            msg = f"Decision table chose {tag.label} but no fiber-level isomorphism exists"
            raise UnclassifiableError(msg, decision_point="certification")
        logger.info("Classified presentation as %s", tag.label)
        return tag

    def _peculiar_tag(self, P: AffinePresentation) -> TypeTag:
        iso = P.fiber(P.base.isotropic[0])
        long = next(f for f, n in zip(P.fibers, P.base.norms, strict=True) if n > 0)
        if len(iso.residues) == 2:
            q = (iso.residues[1] - iso.residues[0]) / iso.step
        elif len(iso.residues) == 1 and long.step == 2 * iso.step:
            q = Fraction(1, 2)
        else:
            msg = "Fibers over C(1,1) match neither Ã(1,1) nor C(1,1)^q"
            raise UnclassifiableError(msg, decision_point="C(1,1) fibers")
        q = canonical_q(q)
        if q == 0:
            msg = "Isotropic fibers over C(1,1) give q = 0"
            raise UnclassifiableError(msg, decision_point="C(1,1) fibers")
        return TypeTag(Family.PECULIAR, 1, 1, q=q).canonical()

    def _quotient_tag(self, P: AffinePresentation, n: int) -> TypeTag:
        # catalog coordinates of cl(Ã(n,n)) are the simple even roots
        shift: list[Fraction] = []
        for k in range(P.base.dim):
            fiber = P.fiber(unit_vector(P.base.dim, k))
            if fiber.step != 1 or len(fiber.residues) != 1:
                msg = "Even fibers over A(n,n) must be single progressions of step 1"
                raise UnclassifiableError(msg, decision_point="A(n,n) fibers")
            shift.append(-fiber.residues[0])
        flat = shift_presentation(P, shift)
        mixed = flat.fiber(flat.base.isotropic[0])
        q = canonical_q((n + 1) * mixed.residues[0])
        return TypeTag(Family.QUOTIENT, n=n, q=q).canonical()

    def _twisted_tag(self, P: AffinePresentation, base_tag: TypeTag) -> TypeTag:
        try:
            observed = affine_signature(P)
        except NotApplicableError as exc:
            raise UnclassifiableError(str(exc), decision_point="k-function") from exc
        options = [t for r in (1, 2, 3, 4) for t in twisted_options(base_tag, r)]
        for tag in options:
            if affine_signature(self._repo.affine(tag)) == observed:
                return tag
        msg = f"k-pattern over {base_tag.label} matches none of {[t.label for t in options]}"
        raise UnclassifiableError(msg, decision_point=f"k-pattern over {base_tag.label}")

    # ── Dispatch and comparison ──

    def classify(self, system: FiniteRootSystem | AffinePresentation) -> TypeTag:
        if isinstance(system, AffinePresentation):
            return self.classify_affine(system)
        return self.classify_finite(system)

    def similar(
        self,
        R1: FiniteRootSystem | AffinePresentation,
        R2: FiniteRootSystem | AffinePresentation,
    ) -> bool:
        """Whether the irreducible components can be matched up to isomorphism."""
        left, right = _components(R1), _components(R2)
        if len(left) != len(right):
            return False
        graph = nx.Graph()
        top = [("L", i) for i in range(len(left))]
        graph.add_nodes_from(top)
        graph.add_nodes_from(("R", j) for j in range(len(right)))
        for i, a in enumerate(left):
            for j, b in enumerate(right):
                if _component_iso(a, b):
                    graph.add_edge(("L", i), ("R", j))
        matching = nx.bipartite.maximum_matching(graph, top_nodes=top)
        return len(matching) // 2 == len(left)


def affine_signature(P: AffinePresentation) -> Counter[tuple[Fraction, int, bool]]:
    """Multiset of (class norm, k, whether α and 2α both lift) over all classes.

    Raises:
        NotApplicableError: If the k-function is undefined.
    """
    k = k_function(P)
    normal = normalize_delta(P)
    signature: Counter[tuple[Fraction, int, bool]] = Counter()
    for fiber, norm in zip(normal.fibers, normal.base.norms, strict=True):
        double = normal.fiber_or_none(scale(2, fiber.base_class))
        doubled = double is not None and multiple_offset(fiber, double, Fraction(2)) is not None
        signature[(norm, k[fiber.base_class], doubled)] += 1
    return signature


def _components(
    system: FiniteRootSystem | AffinePresentation,
) -> list[FiniteRootSystem | AffinePresentation]:
    if isinstance(system, AffinePresentation):
        parts = decompose_agrs(system)
        return [*parts.affine, *parts.finite]
    return list(decompose(system))


def _component_iso(
    a: FiniteRootSystem | AffinePresentation, b: FiniteRootSystem | AffinePresentation
) -> bool:
    if isinstance(a, AffinePresentation) and isinstance(b, AffinePresentation):
        return isomorphic_affine(a, b) is not None
    if isinstance(a, FiniteRootSystem) and isinstance(b, FiniteRootSystem):
        return isomorphic(a, b) is not None
    return False


__all__ = [
    "ClassifierService",
    "Fingerprint",
    "affine_signature",
    "finite_tags_of_rank",
    "quotient_iso",
]

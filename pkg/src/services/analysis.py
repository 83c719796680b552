"""Parity functions, root subsystems and the Lie-structure correspondence."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from src.config import Settings, get_settings
from src.errors import InvalidInputError, UnclassifiableError, UnsupportedTagError
from src.models.presentation import AffinePresentation
from src.models.space import Vector, add, scale
from src.models.system import FiniteRootSystem
from src.models.tag import CLASSICAL, Family, TypeTag
from src.schemas.report import AxiomReport
from src.services.affsys import presentation_from_finite, validate_agrs, window
from src.services.classify import ClassifierService
from src.services.exactlin import radical, restrict_to_span
from src.services.finsys import check_axioms, decompose
from src.services.gf2 import GF2System

logger = logging.getLogger(__name__)

System = FiniteRootSystem | AffinePresentation


# ── Parity functions ──


@dataclass(frozen=True)
class ParityFunction:
    """A map R → Z_2 stored as a bitmask over the sorted root list."""

    roots: tuple[Vector, ...]
    bits: int

    def __getitem__(self, root: Vector) -> int:
        try:
            i = self.roots.index(root)
        except ValueError as exc:
            msg = f"{root} is not among the roots of this parity function"
            raise InvalidInputError(msg) from exc
        return (self.bits >> i) & 1

    @property
    def odd(self) -> tuple[Vector, ...]:
        return tuple(r for i, r in enumerate(self.roots) if (self.bits >> i) & 1)

    @property
    def even(self) -> tuple[Vector, ...]:
        return tuple(r for i, r in enumerate(self.roots) if not (self.bits >> i) & 1)

    def as_dict(self) -> dict[Vector, int]:
        return {r: (self.bits >> i) & 1 for i, r in enumerate(self.roots)}


@dataclass(frozen=True)
class ParitySolutions:
    """All parity functions of a finite root list.

    ``functions`` is filled only when the solution space is small enough to
    enumerate; ``particular`` and ``basis`` always describe the full set.
    """

    roots: tuple[Vector, ...]
    particular: ParityFunction | None
    basis: tuple[int, ...]
    functions: tuple[ParityFunction, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def count(self) -> int:
        return (1 << len(self.basis)) if self.consistent else 0

    @property
    def enumerated(self) -> bool:
        return len(self.functions) == self.count

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator[ParityFunction]:
        return iter(self.functions)

    def __contains__(self, f: object) -> bool:
        if not isinstance(f, ParityFunction) or f.roots != self.roots or self.particular is None:
            return False
        residual = f.bits ^ self.particular.bits
        for vec in _reduced_basis(self.basis):
            if residual & (1 << (vec.bit_length() - 1)):
                residual ^= vec
        return residual == 0


def _reduced_basis(basis: Iterable[int]) -> list[int]:
    reduced: list[int] = []
    for vec in basis:
        for b in reduced:
            if vec & (1 << (b.bit_length() - 1)):
                vec ^= b
        if vec:
            reduced = [b ^ vec if b & (1 << (vec.bit_length() - 1)) else b for b in reduced]
            reduced.append(vec)
            reduced.sort(reverse=True)
    return reduced


def parity_window(P: AffinePresentation) -> FiniteRootSystem:
    """Window of P large enough to contain every additive triple pattern."""
    return window(P, 2 * (P.max_step + P.max_abs_residue))


def _explicit(system: System) -> FiniteRootSystem:
    return parity_window(system) if isinstance(system, AffinePresentation) else system


def parity_constraints(R: FiniteRootSystem) -> GF2System:
    """The linear system of f(α)+f(β)=f(α+β) and f(isotropic)=1̄ over R."""
    eqs = GF2System(len(R))
    positions = R.positions
    for i, a in enumerate(R.roots):
        for j in range(i, len(R)):
            k = positions.get(add(a, R.roots[j]))
            if k is not None:
                eqs.add((1 << i) ^ (1 << j) ^ (1 << k))
    for i, norm in enumerate(R.norms):
        if norm == 0:
            eqs.fix(i, 1)
    return eqs


def parity_functions(system: System, settings: Settings | None = None) -> ParitySolutions:
    """Solve for every parity function of a finite system or a parity window.

    The solutions are enumerated when the solution space has dimension at
    most ``parity_enumeration_max_dim``.
    """
    settings = settings or get_settings()
    R = _explicit(system)
    eqs = parity_constraints(R)
    solution = eqs.solve()
    if solution is None:
        logger.debug("Parity constraints on %d roots are inconsistent", len(R))
        return ParitySolutions(R.roots, None, (), ())
    functions: tuple[ParityFunction, ...] = ()
    if solution.dimension <= settings.parity_enumeration_max_dim:
        functions = tuple(ParityFunction(R.roots, x) for x in solution)
    logger.debug(
        "Parity space on %d roots: %d constraints, dimension %d",
        len(R),
        len(eqs),
        solution.dimension,
    )
    return ParitySolutions(
        R.roots, ParityFunction(R.roots, solution.particular), solution.basis, functions
    )


def default_parity(system: System) -> ParityFunction:
    """Odd roots are the isotropic ones and those α with 2α ∈ R.

    For a presentation the function lives on its parity window, with
    doubling tested against the full presentation.
    """
    R = _explicit(system)
    bits = 0
    for i, (root, norm) in enumerate(zip(R.roots, R.norms, strict=True)):
        double = scale(2, root)
        doubled = system.contains(double) if isinstance(system, AffinePresentation) else double in R
        if norm == 0 or doubled:
            bits |= 1 << i
    return ParityFunction(R.roots, bits)


# ── Root subsystems ──


@dataclass(frozen=True)
class SubsystemResult:
    """Verdict of is_subsystem; ``tag`` is None for reducible or non-systems."""

    is_system: bool
    system: FiniteRootSystem
    report: AxiomReport
    tag: TypeTag | None = None
    components: tuple[TypeTag, ...] = ()

    @property
    def label(self) -> str:
        if not self.is_system:
            return "not a system"
        if self.tag is not None:
            return self.tag.label
        return " ⊕ ".join(t.label for t in self.components) or "unclassified"


def subsystem_span(S: Iterable[Vector], R: System) -> FiniteRootSystem:
    """S as an explicit system in the span of its own vectors.

    Raises:
        InvalidInputError: If S is empty or some vector is not a root of R.
    """
    chosen = sorted(set(S))
    if not chosen:
        msg = "A subsystem needs at least one root"
        raise InvalidInputError(msg)
    if isinstance(R, AffinePresentation):
        outside = [v for v in chosen if not R.contains(v)]
        ambient = R.total_space
    else:
        outside = [v for v in chosen if v not in R]
        ambient = R.space
    if outside:
        msg = f"{ambient.format(outside[0])} is not a root of the ambient system"
        raise InvalidInputError(msg)
    restriction = restrict_to_span(ambient, chosen)
    return FiniteRootSystem.create(
        restriction.space, restriction.coords, embedding=restriction.basis, parent=ambient
    )


def is_subsystem(
    S: Iterable[Vector], R: System, classifier: ClassifierService | None = None
) -> SubsystemResult:
    """Whether S ⊆ R is a root system in its own span, and its type if so."""
    classifier = classifier or ClassifierService()
    sub = subsystem_span(S, R)
    rad = radical(sub.space)
    if len(rad) == 1:
        presentation = presentation_from_finite(sub)
        report = validate_agrs(presentation)
        valid = report.is_grs
    else:
        report = check_axioms(sub)
        valid = report.is_weak_grs
    if not valid:
        logger.info("Subset of %d roots is not a root system", len(sub))
        return SubsystemResult(False, sub, report)
    if report.is_irreducible:
        try:
            tag = classifier.classify_finite(sub)
        except UnclassifiableError as exc:
            logger.warning("Subsystem is valid but unclassified: %s", exc)
            return SubsystemResult(True, sub, report)
        return SubsystemResult(True, sub, report, tag=tag, components=(tag,))
    try:
        parts = tuple(classifier.classify_finite(c) for c in decompose(sub))
    except UnclassifiableError as exc:
        logger.warning("Subsystem component is unclassified: %s", exc)
        parts = ()
    return SubsystemResult(True, sub, report, components=parts)


# ── Lie-structure correspondence ──


@dataclass(frozen=True)
class Correspondence:
    tag: TypeTag
    row: str
    lie_structure: str
    notes: str = ""


_CLASSICAL_ALGEBRAS = {
    Family.A: lambda n: f"sl({n + 1})",
    Family.B: lambda n: f"so({2 * n + 1})",
    Family.C: lambda n: f"sp({2 * n})",
    Family.D: lambda n: f"so({2 * n})",
    Family.E: lambda n: f"e{n}",
    Family.F: lambda n: "f4",
    Family.G: lambda n: "g2",
}

NO_ISOTROPIC_NOTE = (
    "contains no isotropic roots: one of B(0,n)^(1), C(n+1)^(2), A_2n^(2), "
    "A(0,2n-1)^(2), A(0,2n)^(4)"
)


def _superalgebra(tag: TypeTag) -> str:
    f, m, n = tag.family, tag.m, tag.n
    names = {
        Family.B0: f"osp(1|{2 * n})",
        Family.A_SUPER: f"sl({m + 1}|{n + 1})" if m != n else f"psl({n + 1}|{n + 1})",
        Family.B_SUPER: f"osp({2 * m + 1}|{2 * n})",
        Family.C_SUPER: f"osp(2|{2 * n - 2})",
        Family.D_SUPER: f"osp({2 * m}|{2 * n})",
        Family.D21: f"D(2,1;{tag.lam})",
        Family.G3: "G(3)",
        Family.F4_SUPER: "F(4)",
    }
    return names[f]


def has_isotropic_roots(tag: TypeTag) -> bool:
    """Whether the catalog system of a tag contains isotropic roots."""
    f, m, r = tag.family, tag.m, tag.twist
    if f in CLASSICAL or f == Family.B0:
        return False
    if f == Family.C_SUPER and r == 2:
        return False
    return not (f == Family.A_SUPER and m == 0 and r in (2, 4))


def correspondence(tag: TypeTag) -> Correspondence:
    """The row of the correspondence table a classified type belongs to.

    Raises:
        UnsupportedTagError: If the tag is not a valid catalog type.
    """
    tag = tag.canonical()
    f = tag.family
    if f == Family.A_TILDE:
        return Correspondence(tag, "finite AGRS", f"gl({tag.n + 1}|{tag.n + 1})")
    if f == Family.PECULIAR:
        return Correspondence(
            tag,
            "infinite AGRS with cl(R) ≅ A(1,1)",
            "rational quotient of gl(2|2)^(1)",
            f"quotient parameter q = {tag.q}",
        )
    if f == Family.QUOTIENT:
        k = tag.n + 1
        return Correspondence(
            tag,
            "infinite AGRS with cl(R) ≅ A(n,n)",
            f"infinite quotient of gl({k}|{k})^(1)",
            f"quotient parameter q = {tag.q}",
        )
    if not tag.is_affine:
        if f in CLASSICAL:
            return Correspondence(tag, "RS", f"simple Lie algebra {_CLASSICAL_ALGEBRAS[f](tag.n)}")
        if f == Family.B0:
            return Correspondence(tag, "RS", _superalgebra(tag), "basic classical superalgebra")
        if f == Family.C_MN and (tag.m, tag.n) == (1, 1):
            return Correspondence(
                tag, "weak GRS", "psl(2|2)", "A(1,1) ≅ C(1,1) ≅ cl(Ã(1,1)); not a GRS"
            )
        if f in (Family.C_MN, Family.BC_MN):
            return Correspondence(tag, "weak GRS", "none", "weak GRS that is not a GRS")
        return Correspondence(tag, "GRS", f"basic classical superalgebra {_superalgebra(tag)}")
    if f in CLASSICAL:
        return Correspondence(tag, "ARS", f"affine Kac-Moody algebra {tag.label}")
    if not has_isotropic_roots(tag):
        return Correspondence(
            tag, "ARS", f"affine Kac-Moody superalgebra {tag.label}", NO_ISOTROPIC_NOTE
        )
    return Correspondence(
        tag,
        "AGRS",
        f"affine Kac-Moody superalgebra {tag.label}",
        "symmetrizable, with isotropic roots; gl(n|n)^(1) is excluded",
    )


SUBSYSTEM_MENU = (
    "real roots of a finite-dimensional Lie superalgebra",
    "real roots of an affine Kac-Moody superalgebra",
    "rational quotient of gl(2|2)^(1)",
    "infinite quotient of gl(n|n)^(1), n >= 3",
)


def subsystem_menu(tag: TypeTag) -> str | None:
    """Which kind of irreducible subsystem of an affine catalog system a tag is.

    Returns None for types that cannot occur as such a subsystem.
    """
    try:
        entry = correspondence(tag)
    except UnsupportedTagError:
        return None
    if entry.row in ("RS", "GRS", "finite AGRS") or entry.lie_structure == "psl(2|2)":
        return SUBSYSTEM_MENU[0]
    if entry.row in ("ARS", "AGRS"):
        return SUBSYSTEM_MENU[1]
    if tag.family == Family.PECULIAR:
        return SUBSYSTEM_MENU[2]
    if tag.family == Family.QUOTIENT:
        return SUBSYSTEM_MENU[3]
    return None


__all__ = [
    "Correspondence",
    "ParityFunction",
    "ParitySolutions",
    "SUBSYSTEM_MENU",
    "SubsystemResult",
    "correspondence",
    "default_parity",
    "has_isotropic_roots",
    "is_subsystem",
    "parity_constraints",
    "parity_functions",
    "parity_window",
    "subsystem_menu",
    "subsystem_span",
]

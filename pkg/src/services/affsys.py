"""Affine presentations: builders, AGRS validation, k-function, δ normalization, windows."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from src.config import Settings, get_settings
from src.errors import InvalidInputError, NotApplicableError, UnsupportedTagError
from src.models.presentation import AffinePresentation, Fiber, KFunction
from src.models.space import (
    FormSpace,
    Vector,
    add,
    dot,
    is_zero,
    matrix_apply,
    neg,
    proportion,
    scale,
    sub,
    zero_vector,
)
from src.models.system import FiniteRootSystem
from src.models.tag import Family, TypeTag, affine_base
from src.schemas.report import WEAK_AXIOMS, AxiomId, AxiomReport
from src.services.catalog import ann_data, build_finite
from src.services.exactlin import (
    build_quotient_map,
    fraction_gcd,
    fraction_lcm,
    radical,
    rank,
    restrict_to_span,
)
from src.services.finsys import (
    ViolationCollector,
    direction_key,
    nonorthogonality_graph,
    sorted_components,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)


# ── Basic views ──


def cl_of(P: AffinePresentation) -> FiniteRootSystem:
    """The projected system cl(R), i.e. the base of the presentation."""
    return P.base


def window(P: AffinePresentation, N: int | Fraction) -> FiniteRootSystem:
    """All roots with |δ-offset| <= N as an explicit system in the total space."""
    return FiniteRootSystem.create(P.total_space, P.roots_within(N))


def restrict_classes(P: AffinePresentation, classes: Iterable[Vector]) -> AffinePresentation:
    """Keep only the fibers over the given classes (same spaces)."""
    wanted = set(classes)
    base = P.base.with_roots(c for c in P.classes if c in wanted)
    return AffinePresentation.create(base, (P.fiber(c) for c in base.roots), P.delta_label)


def shift_presentation(P: AffinePresentation, functional: Sequence[object]) -> AffinePresentation:
    """Apply α ↦ α + λ(α)·δ to every class, λ given by its values on the base basis.

    Raises:
        InvalidInputError: If the functional has the wrong length.
    """
    lam = tuple(Fraction(v) for v in functional)  # type: ignore[arg-type]
    if len(lam) != P.base.dim:
        msg = f"Shift functional needs {P.base.dim} values, got {len(lam)}"
        raise InvalidInputError(msg)
    return P.with_fibers(f.shifted(dot(lam, f.base_class)) for f in P.fibers)


def transport(P: AffinePresentation, matrix: Sequence[Vector], space: FormSpace) -> AffinePresentation:
    """Push every class through a linear map onto another base space."""
    fibers = [f.relabelled(matrix_apply(matrix, f.base_class)) for f in P.fibers]
    base = FiniteRootSystem.create(space, (f.base_class for f in fibers))
    return AffinePresentation.create(base, fibers, P.delta_label)


def rescale_delta(P: AffinePresentation, factor: Fraction) -> AffinePresentation:
    """Measure offsets in units of factor·δ (a negative factor flips δ)."""
    return P.with_fibers(f.rescaled(factor) for f in P.fibers)


# ── δ normalization and the k-function ──


def _signed_residues(fiber: Fiber) -> list[Fraction]:
    if fiber.step == 0:
        return list(fiber.residues)
    half = fiber.step / 2
    return sorted(r - fiber.step if r > half else r for r in fiber.residues)


def normalize_delta(P: AffinePresentation) -> AffinePresentation:
    """Rescale δ so the fiber steps have gcd 1, then fix its sign.

    Each fiber is first written with its smallest period. The sign of δ is
    chosen so that the first residue (classes in lexicographic order,
    residues taken in (-k/2, k/2]) that is neither 0 nor k/2 is positive.
    Presentations without infinite fibers are returned unchanged.
    """
    if P.is_finite:
        return P
    coarse = P.with_fibers(f.coarsened() for f in P.fibers)
    g = fraction_gcd(f.step for f in coarse.fibers)
    result = rescale_delta(coarse, g) if g != 1 else coarse
    for fiber in result.fibers:
        for r in _signed_residues(fiber):
            if r == 0 or (fiber.step and r == fiber.step / 2):
                continue
            if r < 0:
                result = rescale_delta(result, Fraction(-1))
            logger.debug("Normalized δ by factor %s (sign %s)", g, "-" if r < 0 else "+")
            return result
    return result


def k_function(P: AffinePresentation) -> KFunction:
    """Steps of the normalized presentation as positive integers.

    Raises:
        NotApplicableError: For presentations with a finite fiber, or whose
            normalized fibers are unions of several progressions.
    """
    if any(f.is_finite for f in P.fibers):
        msg = "k is only defined when every fiber is infinite"
        raise NotApplicableError(msg)
    normal = normalize_delta(P)
    if any(len(f.residues) > 1 for f in normal.fibers):
        msg = "Peculiar presentation: some fiber is a union of two progressions"
        raise NotApplicableError(msg)
    values = []
    for f in normal.fibers:
        if f.step.denominator != 1:
            msg = f"Non-integral normalized step {f.step}"
            raise NotApplicableError(msg)
        values.append(int(f.step))
    return KFunction(classes=normal.classes, values=tuple(values))


# ── Builders ──

_WEAK_ONLY_BASES = frozenset({Family.C_MN, Family.BC_MN, Family.A_TILDE})


def _standard_fibers(base: FiniteRootSystem, rule: Callable[[Vector, Fraction], tuple[object, object]]) -> list[Fiber]:
    return [
        Fiber.create(r, step, [residue])
        for r, n in zip(base.roots, base.norms, strict=True)
        for step, residue in [rule(r, n)]
    ]


def build_untwisted(base_tag: TypeTag) -> AffinePresentation:
    """X^(1): every fiber is Z (step 1, residue 0) over the base system.

    Raises:
        UnsupportedTagError: For affine tags or weak-only bases.
    """
    tag = base_tag.canonical()
    if tag.is_affine:
        msg = f"{tag.label} is already affine"
        raise UnsupportedTagError(msg)
    if tag.family in _WEAK_ONLY_BASES or (tag.family == Family.A_SUPER and tag.m == tag.n):
        msg = f"The untwisted affinization of {tag.label} is not an AGRS"
        raise UnsupportedTagError(msg)
    base = build_finite(tag)
    return AffinePresentation.create(base, _standard_fibers(base, lambda r, n: (1, 0)))


# norm of a class → (step, residue); the norm tables follow the standard catalog bases.
_H = Fraction(1, 2)


def _pattern(table: Mapping[int, tuple[object, object]]) -> dict[Fraction, tuple[Fraction, Fraction]]:
    return {Fraction(k): (Fraction(s), Fraction(r)) for k, (s, r) in table.items()}  # type: ignore[arg-type]


_TWIST_PATTERNS: dict[tuple[Family, int], dict[Fraction, tuple[Fraction, Fraction]]] = {
    (Family.D, 2): _pattern({1: (1, 0), 2: (2, 0)}),
    (Family.E, 2): _pattern({1: (1, 0), 2: (2, 0)}),
    (Family.D, 3): _pattern({2: (1, 0), 6: (3, 0)}),
    (Family.C_SUPER, 2): _pattern({-1: (1, 0), -2: (2, 0), -4: (2, 0)}),
}


def _twist_pattern(tag: TypeTag) -> Callable[[Vector, Fraction], tuple[object, object]]:
    """The (step, residue) rule of a twisted representative, by class norm."""
    f, m, n, r = tag.family, tag.m, tag.n, tag.twist
    table: dict[Fraction, tuple[Fraction, Fraction]] | None = None
    if f == Family.A and r == 2 and n % 2 == 1:
        table = _pattern({2: (1, 0), 4: (2, 0)})
    elif f == Family.A and r == 2:
        table = _pattern({-1: (1, 0), -2: (1, 0), -4: (2, 1)})
    elif (f, r) in _TWIST_PATTERNS:
        table = _TWIST_PATTERNS[(f, r)]
    elif f == Family.A_SUPER and r == 2 and m == 0:
        table = _pattern({-1: (1, 0), -2: (1, 0), -4: (2, 0)})
    elif f == Family.A_SUPER and r == 4 and m == 0:
        table = _pattern({-1: (1, 0), -2: (2, 0), -4: (4, 2)})
    elif f == Family.D_SUPER and r == 2:
        short = _pattern({1: (1, 0), -1: (1, 0)})
        return lambda cls, norm: short.get(norm, (2, 0))
    elif f == Family.A_SUPER and r == 2 and m % 2 == 1:
        table = _pattern({2: (1, 0), -2: (1, 0), 0: (1, _H), 4: (2, 0), -4: (2, 0)})
    elif f == Family.A_SUPER and r == 2:
        # ε-half of BC(a,b) has size min(a,b); the half coming from A(2a,..) is reduced
        reduced_norm = 1 if m // 2 <= (n + 1) // 2 else -1
        table = _pattern({2: (1, 0), -2: (1, 0), 0: (1, _H), 4: (2, 0), -4: (2, 0)})
        table[Fraction(reduced_norm)] = (Fraction(1), _H)
        table[Fraction(-reduced_norm)] = (Fraction(1), Fraction(0))
    elif f == Family.A_SUPER and r == 4:
        table = _pattern({1: (1, 0), -1: (1, 0), 2: (2, 0), -2: (2, 0), 0: (2, 1), 4: (4, 2), -4: (4, 2)})
    if table is None:
        msg = f"No twisted construction for {tag.label}"
        raise UnsupportedTagError(msg)
    rules = table

    def rule(cls: Vector, norm: Fraction) -> tuple[object, object]:
        try:
            return rules[norm]
        except KeyError as exc:
            msg = f"{tag.label}: no fiber rule for classes of norm {norm}"
            raise UnsupportedTagError(msg) from exc

    return rule


def build_twisted(tag: TypeTag) -> AffinePresentation:
    """Representative X^(r), r >= 2, from its base type and k-pattern.

    Raises:
        UnsupportedTagError: If the tag is not a twisted representative.
    """
    tag = tag.canonical()
    if tag.twist < 2:
        msg = f"{tag.label} is not a twisted type"
        raise UnsupportedTagError(msg)
    base = build_finite(affine_base(tag))
    return AffinePresentation.create(base, _standard_fibers(base, _twist_pattern(tag)))


def build_quotient(n: int, q: object) -> AffinePresentation:
    """Ã(n,n)^(1)_q in intrinsic coordinates over cl(Ã(n,n)).

    A root e + t·Id + mδ of Ã(n,n)^(1) maps to e + (m + t·q)δ, so even
    classes carry Z and a mixed class with E-offset t carries t·q + Z.

    Raises:
        InvalidInputError: If n < 1.
    """
    if n < 1:
        msg = f"Quotient needs n >= 1, got {n}"
        raise InvalidInputError(msg)
    q_value = Fraction(q)  # type: ignore[arg-type]
    data = ann_data(n)
    residues: dict[Vector, set[Fraction]] = {}
    for entry in data.roots:
        residues.setdefault(entry.base_class, set()).add((entry.offset * q_value) % 1)
    fibers = [Fiber.create(c, 1, sorted(values)) for c, values in residues.items()]
    logger.debug("Built quotient n=%d q=%s", n, q_value)
    return AffinePresentation.create(data.base, fibers)


def build_finite_Ann(n: int) -> AffinePresentation:  # noqa: N802
    """Ã(n,n) with δ = Id: each class carries its finite list of E-offsets.

    Raises:
        InvalidInputError: If n < 1.
    """
    if n < 1:
        msg = f"Ã(n,n) needs n >= 1, got {n}"
        raise InvalidInputError(msg)
    data = ann_data(n)
    residues: dict[Vector, list[Fraction]] = {}
    for entry in data.roots:
        residues.setdefault(entry.base_class, []).append(entry.offset)
    fibers = [Fiber.create(c, 0, values) for c, values in residues.items()]
    return AffinePresentation.create(data.base, fibers)


def build_peculiar(q: object) -> AffinePresentation:
    """C(1,1)^q over the standard C(1,1) = {±2ε, ±2δ, ±ε±δ}.

    Raises:
        InvalidInputError: If q is an integer.
    """
    q_value = Fraction(q)  # type: ignore[arg-type]
    if q_value.denominator == 1:
        msg = f"C(1,1)^q needs a non-integer q, got {q_value}"
        raise InvalidInputError(msg)
    base = build_finite(TypeTag(Family.C_MN, 1, 1))
    two_e, two_d = (Fraction(2), Fraction(0)), (Fraction(0), Fraction(2))
    plus, minus = (Fraction(1), Fraction(1)), (Fraction(1), Fraction(-1))
    table: dict[Vector, list[Fraction]] = {
        two_e: [Fraction(0)],
        two_d: [q_value],
        plus: [Fraction(0), q_value],
        minus: [Fraction(0), -q_value],
    }
    fibers: list[Fiber] = []
    for cls, values in table.items():
        fiber = Fiber.create(cls, 1, values)
        fibers.extend((fiber, fiber.negated()))
    return AffinePresentation.create(base, fibers)


def embedded_quotient(n: int, q: object, N: int | Fraction) -> FiniteRootSystem:
    """Window of Ã(n,n)^(1)_q in embedded coordinates (V′ ⊕ Qδ) / Q(Id - qδ).

    The coordinate d_{n+1} is eliminated by adding multiples of Id - qδ,
    which is orthogonal to every root. Roots are kept when their
    δ-coordinate is at most N in size; the result is restricted to the span
    of the kept roots and labelled in e/d/delta coordinates.
    """
    q_value = Fraction(q)  # type: ignore[arg-type]
    bound = Fraction(N)
    data = ann_data(n)
    size = 2 * n + 2
    labels = [f"e{i + 1}" for i in range(n + 1)] + [f"d{j + 1}" for j in range(n)] + ["delta"]
    coords = FormSpace.diagonal(labels, [1] * (n + 1) + [-1] * n + [0])
    identity = tuple([Fraction(1)] * (n + 1) + [Fraction(-1)] * (n + 1))
    roots: set[Vector] = set()
    span = int(bound + abs(q_value)) + 1
    for entry in data.roots:
        c = entry.ambient[size - 1]
        image = add(entry.ambient, scale(c, identity))
        for m in range(-span, span + 1):
            offset = m - c * q_value
            if abs(offset) <= bound:
                roots.add((*image[: size - 1], offset))
    ordered = sorted(roots)
    restriction = restrict_to_span(coords, ordered)
    return FiniteRootSystem.create(
        restriction.space, restriction.coords, embedding=restriction.basis, parent=coords
    )


def presentation_from_finite(R: FiniteRootSystem, delta_label: str = "delta") -> AffinePresentation:
    """Fiber presentation of an explicit finite system with one-dimensional radical.

    Raises:
        InvalidInputError: If the radical is not one-dimensional.
    """
    rad = radical(R.space)
    if len(rad) != 1:
        msg = f"Expected a one-dimensional radical, found dimension {len(rad)}"
        raise InvalidInputError(msg)
    delta = rad[0]
    quotient = build_quotient_map(R.space)
    offsets: dict[Vector, list[Fraction]] = {}
    for r in R.roots:
        cls = quotient.apply(r)
        rest = sub(r, quotient.lift(cls))
        ratio = proportion(delta, rest) if not is_zero(rest) else Fraction(0)
        if ratio is None:
            msg = f"Root {R.format(r)} does not split along the radical"
            raise InvalidInputError(msg)
        offsets.setdefault(cls, []).append(ratio)
    base = FiniteRootSystem.create(quotient.target, offsets)
    fibers = [Fiber.create(c, 0, values) for c, values in offsets.items()]
    label = delta_label if delta_label not in base.space.basis_labels else f"{delta_label}'"
    return AffinePresentation.create(base, fibers, label)


# ── Sums and decompositions ──


def direct_sum(parts: Sequence[AffinePresentation | FiniteRootSystem]) -> AffinePresentation:
    """Orthogonal union of presentations and finite systems sharing one δ.

    Finite systems enter with trivial fibers (step 0, residue 0).

    Raises:
        InvalidInputError: If ``parts`` is empty.
    """
    if not parts:
        msg = "direct_sum needs at least one part"
        raise InvalidInputError(msg)
    bases = [p.base if isinstance(p, AffinePresentation) else p for p in parts]
    all_labels = [label for b in bases for label in b.space.basis_labels]
    clash = len(set(all_labels)) != len(all_labels)
    labels: list[str] = []
    total = sum(b.dim for b in bases)
    gram = [[Fraction(0)] * total for _ in range(total)]
    offset = 0
    for index, b in enumerate(bases, start=1):
        labels.extend(f"{label}#{index}" if clash else label for label in b.space.basis_labels)
        for i, row in enumerate(b.space.gram):
            for j, value in enumerate(row):
                gram[offset + i][offset + j] = value
        offset += b.dim
    space = FormSpace.create(labels, gram)
    fibers: list[Fiber] = []
    offset = 0
    for part, b in zip(parts, bases, strict=True):
        before, after = zero_vector(offset), zero_vector(total - offset - b.dim)
        for r in b.roots:
            cls = (*before, *r, *after)
            if isinstance(part, AffinePresentation):
                source = part.fiber(r)
                fibers.append(Fiber(cls, source.step, source.residues))
            else:
                fibers.append(Fiber.create(cls, 0, [0]))
        offset += b.dim
    base = FiniteRootSystem.create(space, (f.base_class for f in fibers))
    return AffinePresentation.create(base, fibers)


@dataclass(frozen=True)
class AffineDecomposition:
    """Irreducible AGRS pieces, finite GRS pieces, and whether their spans add up."""

    affine: tuple[AffinePresentation, ...]
    finite: tuple[FiniteRootSystem, ...]
    span_ok: bool


def _lift_rank(P: AffinePresentation, fibers: Sequence[Fiber]) -> int:
    lifts: list[Vector] = []
    for f in fibers:
        offsets = list(f.residues) + ([f.residues[0] + f.step] if f.step else [])
        lifts.extend(P.lift(f.base_class, o) for o in offsets)
    return rank(lifts)


def decompose_agrs(P: AffinePresentation) -> AffineDecomposition:
    """Split into orthogonal components; those whose lifts reach δ are AGRSs.

    Each component is re-expressed on the span of its classes. A component
    whose lifted roots span δ as well becomes an affine piece; otherwise its
    roots form a finite system isomorphic to its classes.
    """
    components = sorted_components(nonorthogonality_graph(P.base.pairing_table))
    affine: list[AffinePresentation] = []
    finite: list[FiniteRootSystem] = []
    span_total = 0
    for comp in components:
        fibers = [P.fibers[i] for i in comp]
        classes = [f.base_class for f in fibers]
        restriction = restrict_to_span(P.base.space, classes)
        span_total += restriction.space.dim
        if _lift_rank(P, fibers) > restriction.space.dim:
            base = FiniteRootSystem.create(
                restriction.space,
                restriction.coords,
                embedding=[P.base.embed(b) for b in restriction.basis],
                parent=P.base.parent if P.base.embedding is not None else P.base.space,
            )
            affine.append(
                AffinePresentation.create(
                    base,
                    (f.relabelled(c) for f, c in zip(fibers, restriction.coords, strict=True)),
                    P.delta_label,
                )
            )
            continue
        lifts = [P.lift(f.base_class, o) for f in fibers for o in f.residues]
        lifted = restrict_to_span(P.total_space, lifts)
        finite.append(
            FiniteRootSystem.create(
                lifted.space, lifted.coords, embedding=lifted.basis, parent=P.total_space
            )
        )
    span_ok = span_total == rank(P.classes)
    logger.debug(
        "Decomposed presentation into %d affine and %d finite pieces", len(affine), len(finite)
    )
    return AffineDecomposition(affine=tuple(affine), finite=tuple(finite), span_ok=span_ok)


# ── Validation ──


def _probe_distance(P: AffinePresentation) -> Fraction:
    return 4 * (P.max_abs_residue + P.max_step) + 1


def _check_kernel(P: AffinePresentation, log: ViolationCollector) -> None:
    base = P.base
    rad = radical(base.space)
    if rad:
        log.add(
            AxiomId.AFFINE_KERNEL,
            [base.format(rad[0])],
            "the radical of the total space is larger than Q·δ",
        )
    for f in P.fibers:
        if is_zero(f.base_class):
            log.add(
                AxiomId.AFFINE_KERNEL,
                [P.format_lift(f.base_class, f.residues[0])],
                "a root lies in the radical",
            )
    if _lift_rank(P, P.fibers) < P.total_space.dim:
        log.add(AxiomId.NONZERO_SPAN, [], "roots do not span the total space")


def _check_symmetry(P: AffinePresentation, log: ViolationCollector) -> None:
    for f, norm in zip(P.fibers, P.base.norms, strict=True):
        other = P.fiber_or_none(neg(f.base_class))
        if other is not None and other == f.negated():
            continue
        axiom = AxiomId.WEAK_ODD_REFLECTION if norm == 0 else AxiomId.EVEN_REFLECTION
        log.add(axiom, [P.format_lift(f.base_class, f.residues[0])], "the fiber of -α is not -fiber(α)")


def _check_even(P: AffinePresentation, log: ViolationCollector, far: Fraction) -> int:
    base = P.base
    checked = 0
    for i, fa in enumerate(P.fibers):
        n = base.norms[i]
        if n == 0:
            continue
        for j, fb in enumerate(P.fibers):
            p = base.pairing_table[i][j]
            if p == 0:
                continue
            c = 2 * p / n
            if c.denominator != 1:
                log.add(
                    AxiomId.EVEN_REFLECTION,
                    [base.format(fa.base_class), base.format(fb.base_class)],
                    f"2(α,β)/(α,α) = {c} is not an integer",
                )
                continue
            image = sub(fb.base_class, scale(c, fa.base_class))
            target = P.fiber_or_none(image)
            if target is None:
                log.add(
                    AxiomId.EVEN_REFLECTION,
                    [base.format(fa.base_class), base.format(fb.base_class), base.format(image)],
                    "the reflected class is not a class of R",
                )
                continue
            for x in fa.representatives(target.step / abs(c), far):
                for y in fb.representatives(target.step, 3 * far):
                    checked += 1
                    if not target.contains(y - c * x):
                        log.add(
                            AxiomId.EVEN_REFLECTION,
                            [
                                P.format_lift(fa.base_class, x),
                                P.format_lift(fb.base_class, y),
                                P.format_lift(image, y - c * x),
                            ],
                            "r_α(β) is not a root",
                        )
                        break
                else:
                    continue
                break
    return checked


def _check_odd(P: AffinePresentation, log: ViolationCollector, far: Fraction) -> int:
    base = P.base
    checked = 0
    for i, fa in enumerate(P.fibers):
        if base.norms[i] != 0:
            continue
        for j, fb in enumerate(P.fibers):
            if base.pairing_table[i][j] == 0:
                continue
            plus = P.fiber_or_none(add(fb.base_class, fa.base_class))
            minus = P.fiber_or_none(sub(fb.base_class, fa.base_class))
            modulus = fraction_lcm(f.step for f in (plus, minus) if f is not None)
            for x in fa.representatives(modulus, far):
                for y in fb.representatives(modulus, 3 * far):
                    checked += 1
                    has_plus = plus is not None and plus.contains(y + x)
                    has_minus = minus is not None and minus.contains(y - x)
                    if has_plus != has_minus:
                        continue
                    witness = [P.format_lift(fa.base_class, x), P.format_lift(fb.base_class, y)]
                    if has_plus:
                        log.add(AxiomId.ODD_REFLECTION, witness, "both β+α and β-α are roots")
                    else:
                        log.add(
                            AxiomId.WEAK_ODD_REFLECTION, witness, "neither β+α nor β-α is a root"
                        )
    return checked


def multiple_offset(fa: Fiber, fb: Fiber, c: Fraction) -> Fraction | None:
    """An offset x of fa with c·x in fb, if any."""
    if fb.is_finite:
        for y in fb.residues:
            if fa.contains(y / c):
                return y / c
        return None
    candidates = fa.residues if fa.is_finite else fa.representatives(fb.step / abs(c))
    for x in candidates:
        if fb.contains(c * x):
            return x
    return None


def _check_reduced(P: AffinePresentation, log: ViolationCollector) -> None:
    lines: dict[Vector, list[Fiber]] = {}
    for f in P.fibers:
        if not is_zero(f.base_class):
            lines.setdefault(direction_key(f.base_class), []).append(f)
    for members in lines.values():
        for fa in members:
            for fb in members:
                c = proportion(fa.base_class, fb.base_class)
                if c is None or abs(c) <= 1:
                    continue
                x = multiple_offset(fa, fb, c)
                if x is not None:
                    log.add(
                        AxiomId.REDUCED,
                        [P.format_lift(fa.base_class, x), P.format_lift(fb.base_class, c * x)],
                        "a root has a proper multiple in R",
                    )
                    return


def validate_agrs(P: AffinePresentation, settings: Settings | None = None) -> AxiomReport:
    """Check the AGRS axioms symbolically on residues modulo fiber steps.

    Args:
        P: The presentation to check.
        settings: Supplies the per-axiom witness cap.

    Returns:
        An AxiomReport with ``kind="affine"``; ``is_grs`` means P is an AGRS.
    """
    settings = settings or get_settings()
    log = ViolationCollector(settings.max_violations_per_axiom)
    far = _probe_distance(P)
    _check_kernel(P, log)
    _check_symmetry(P, log)
    checked = _check_even(P, log, far)
    checked += _check_odd(P, log, far)
    _check_reduced(P, log)
    components = sorted_components(nonorthogonality_graph(P.base.pairing_table))
    if len(components) > 1:
        log.add(
            AxiomId.IRREDUCIBLE,
            [P.base.format(P.classes[components[0][0]]), P.base.format(P.classes[components[1][0]])],
            f"{len(components)} orthogonal components",
        )
    if P.base.isotropic:
        log.add(AxiomId.ISOTROPIC, [P.base.format(P.base.isotropic[0])], "contains isotropic roots")
    weak = not log.any_failed(WEAK_AXIOMS)
    grs = weak and not log.failed(AxiomId.ODD_REFLECTION)
    logger.debug("Validated presentation with %d classes: agrs=%s", len(P.classes), grs)
    return AxiomReport(
        kind="affine",
        is_rs=grs and not P.base.isotropic,
        is_grs=grs,
        is_weak_grs=weak,
        is_reduced=not log.failed(AxiomId.REDUCED),
        is_irreducible=not log.failed(AxiomId.IRREDUCIBLE),
        is_finite=P.is_finite,
        violations=log.violations,
        checked=checked,
    )


def lcm_of_steps(P: AffinePresentation) -> int:
    """Least common multiple of the integral steps of a normalized presentation."""
    steps = [int(s) for s in P.steps if s and s.denominator == 1]
    return math.lcm(*steps) if steps else 0

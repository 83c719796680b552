"""Brute-force verifiers, deliberately naive, used to cross-check the main paths."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable
from fractions import Fraction

from src.config import Settings, get_settings
from src.errors import NotApplicableError, OracleLimitError
from src.models.presentation import AffinePresentation
from src.models.space import FormSpace, Vector, add, matrix_apply, neg, scale, sub, unit_vector
from src.models.system import FiniteRootSystem
from src.schemas.report import WEAK_AXIOMS, AxiomId, AxiomReport, OracleReport
from src.services.exactlin import greedy_basis, rank
from src.services.finsys import ViolationCollector, t_coeff
from src.services.isomorphism import IsoWitness, span_matrix

logger = logging.getLogger(__name__)


# ── Axioms ──


def brute_axioms(
    roots: Iterable[Vector],
    space: FormSpace,
    *,
    offset_bound: Fraction | int | None = None,
    settings: Settings | None = None,
) -> AxiomReport:
    """Check every axiom instance of an explicit root list by direct enumeration.

    With ``offset_bound`` the list is read as a window of an affine system
    (last coordinate = δ-offset): the radical is allowed, roots must avoid
    it, and instances whose outcome depends on vectors beyond the bound are
    skipped and counted.
    """
    settings = settings or get_settings()
    log = ViolationCollector(settings.max_violations_per_axiom)
    R = list(roots)
    members = set(R)
    fmt = space.format
    windowed = offset_bound is not None
    bound = Fraction(offset_bound) if offset_bound is not None else Fraction(0)

    def inside(v: Vector) -> bool:
        return not windowed or abs(v[-1]) <= bound

    gram = space.gram
    units = [unit_vector(space.dim, k) for k in range(space.dim)]
    kernel = [r for r in R if all(space.form(r, e) == 0 for e in units)]
    for r in kernel:
        axiom = AxiomId.AFFINE_KERNEL if windowed else AxiomId.NONZERO_SPAN
        log.add(axiom, [fmt(r)], "root lies in the kernel of the form")
    if rank(R) < space.dim:
        log.add(AxiomId.NONZERO_SPAN, [], "roots do not span the space")
    if not windowed and rank(gram) < space.dim:
        log.add(AxiomId.NONDEGENERATE, [], "the form is degenerate")

    checked = skipped = 0
    for a in R:
        aa = space.form(a, a)
        if aa == 0 and neg(a) not in members:
            log.add(AxiomId.WEAK_ODD_REFLECTION, [fmt(a)], "-α is not a root")
        for b in R:
            ab = space.form(a, b)
            if ab == 0:
                continue
            if aa != 0:
                c = 2 * ab / aa
                if c.denominator != 1:
                    checked += 1
                    log.add(AxiomId.EVEN_REFLECTION, [fmt(a), fmt(b)], f"2(α,β)/(α,α) = {c}")
                    continue
                image = sub(b, scale(c, a))
                if not inside(image):
                    skipped += 1
                    continue
                checked += 1
                if image not in members:
                    log.add(AxiomId.EVEN_REFLECTION, [fmt(a), fmt(b), fmt(image)], "r_α(β) ∉ R")
                continue
            plus, minus = add(b, a), sub(b, a)
            if not (inside(plus) and inside(minus)):
                skipped += 1
                continue
            checked += 1
            hits = (plus in members) + (minus in members)
            if hits == 2:
                log.add(AxiomId.ODD_REFLECTION, [fmt(a), fmt(b)], "both β±α are roots")
            elif hits == 0:
                log.add(AxiomId.WEAK_ODD_REFLECTION, [fmt(a), fmt(b)], "neither β±α is a root")

    for a in R:
        for k in (2, 3, 4):
            if scale(k, a) in members:
                log.add(AxiomId.REDUCED, [fmt(a), fmt(scale(k, a))], f"{k}α is a root")
    if R and _orthogonal_split(R, space):
        log.add(AxiomId.IRREDUCIBLE, [], "the roots split into orthogonal parts")
    isotropic = [r for r in R if space.form(r, r) == 0]
    if isotropic:
        log.add(AxiomId.ISOTROPIC, [fmt(isotropic[0])], "contains isotropic roots")

    weak = not log.any_failed(WEAK_AXIOMS)
    grs = weak and not log.failed(AxiomId.ODD_REFLECTION)
    logger.debug("Brute axioms: %d checked, %d skipped", checked, skipped)
    return AxiomReport(
        kind="affine" if windowed else "finite",
        is_rs=grs and not isotropic,
        is_grs=grs,
        is_weak_grs=weak,
        is_reduced=not log.failed(AxiomId.REDUCED),
        is_irreducible=not log.failed(AxiomId.IRREDUCIBLE),
        is_finite=not windowed,
        violations=log.violations,
        checked=checked,
        skipped=skipped,
    )


def _orthogonal_split(R: list[Vector], space: FormSpace) -> bool:
    reached = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j, r in enumerate(R):
            if j not in reached and space.form(R[i], r) != 0:
                reached.add(j)
                frontier.append(j)
    return len(reached) < len(R)


# ── Isomorphism ──


def brute_iso(
    R1: FiniteRootSystem, R2: FiniteRootSystem, settings: Settings | None = None
) -> IsoWitness | None:
    """Try every assignment of a basis of R1 to roots of R2.

    Raises:
        OracleLimitError: If either system exceeds ``oracle_iso_max_roots``.
    """
    settings = settings or get_settings()
    limit = settings.oracle_iso_max_roots
    if max(len(R1), len(R2)) > limit:
        msg = f"brute_iso handles at most {limit} roots, got {len(R1)} and {len(R2)}"
        raise OracleLimitError(msg)
    if len(R1) != len(R2) or rank(R1.roots) != rank(R2.roots):
        return None
    basis = [R1.roots[i] for i in greedy_basis(R1.roots, R1.dim)]
    for images in itertools.permutations(R2.roots, len(basis)):
        matrix = span_matrix(basis, images, R1.dim, R2.dim)
        mapped = [matrix_apply(matrix, r) for r in R1.roots]
        if sorted(mapped) != list(R2.roots):
            continue
        factor = _form_factor(R1, R2, mapped)
        if factor is None:
            continue
        return IsoWitness(matrix, factor, tuple(R2.positions[v] for v in mapped))
    return None


def _form_factor(
    R1: FiniteRootSystem, R2: FiniteRootSystem, mapped: list[Vector]
) -> Fraction | None:
    factor: Fraction | None = None
    for i, j in itertools.combinations_with_replacement(range(len(R1)), 2):
        before = R1.form(R1.roots[i], R1.roots[j])
        after = R2.form(mapped[i], mapped[j])
        if before == 0:
            if after != 0:
                return None
            continue
        ratio = after / before
        if factor is None:
            factor = ratio
        elif ratio != factor:
            return None
    if factor == 0:
        return None
    return factor if factor is not None else Fraction(1)


# ── Parity ──


def brute_parity(R: FiniteRootSystem, settings: Settings | None = None) -> list[int]:
    """Every parity function of R as a bitmask over R.roots, by trying all 2^|R| maps.

    Raises:
        OracleLimitError: If R exceeds ``oracle_parity_max_roots``.
    """
    settings = settings or get_settings()
    limit = settings.oracle_parity_max_roots
    if len(R) > limit:
        msg = f"brute_parity handles at most {limit} roots, got {len(R)}"
        raise OracleLimitError(msg)
    index = R.positions
    triples = [
        (i, j, index[add(a, b)])
        for i, a in enumerate(R.roots)
        for j, b in enumerate(R.roots)
        if add(a, b) in index
    ]
    odd = [i for i, n in enumerate(R.norms) if n == 0]
    found: list[int] = []
    for bits in range(1 << len(R)):
        if any(not (bits >> i) & 1 for i in odd):
            continue
        if all(((bits >> i) ^ (bits >> j) ^ (bits >> k)) & 1 == 0 for i, j, k in triples):
            found.append(bits)
    return found


# ── Translations ──


def _window_reflect(
    P: AffinePresentation, alpha: Vector, gamma: Vector, bound: Fraction
) -> Vector:
    space = P.total_space
    aa = space.form(alpha, alpha)
    ag = space.form(alpha, gamma)
    if aa != 0:
        image = sub(gamma, scale(2 * ag / aa, alpha))
    elif ag == 0:
        image = neg(gamma) if gamma in (alpha, neg(alpha)) else gamma
    else:
        hits = [v for v in (add(gamma, alpha), sub(gamma, alpha)) if P.contains(v)]
        if len(hits) != 1:
            msg = f"Odd reflection at {P.format(alpha)} is undefined on {P.format(gamma)}"
            raise NotApplicableError(msg)
        image = hits[0]
    if abs(image[-1]) > bound:
        msg = f"Reflection image {P.format(image)} leaves the window |offset| <= {bound}"
        raise OracleLimitError(msg)
    return image


def brute_translation(
    P: AffinePresentation,
    alpha: Vector,
    beta: Vector,
    m_max: int,
    settings: Settings | None = None,
) -> OracleReport:
    """Compare (r_α'' r_α')^m(β') with β' + t·m·(α'' − α') for 0 <= m <= m_max.

    α' and α'' are the two lowest lifts of the class α, β' the lowest lift of β.

    Raises:
        NotApplicableError: If t_{α,β} is undefined or α has a single lift.
        OracleLimitError: If an iterate leaves the window.
    """
    settings = settings or get_settings()
    t = t_coeff(P.base, alpha, beta)
    if t is None:
        msg = f"t is undefined at ({P.base.format(alpha)}, {P.base.format(beta)})"
        raise NotApplicableError(msg)
    fa, fb = P.fiber(alpha), P.fiber(beta)
    offsets = sorted(fa.residues)
    if fa.step:
        offsets.append(offsets[0] + fa.step)
    if len(offsets) < 2:
        msg = f"Class {P.base.format(alpha)} has a single lift"
        raise NotApplicableError(msg)
    a1, a2 = offsets[0], offsets[1]
    alpha1, alpha2 = P.lift(alpha, a1), P.lift(alpha, a2)
    beta1 = P.lift(beta, fb.residues[0])
    bound = Fraction(settings.oracle_window_max_offset)
    report = OracleReport()
    current = beta1
    for m in range(m_max + 1):
        expected = add(beta1, scale(t * m, sub(alpha2, alpha1)))
        report.checked += 1
        if current != expected:
            report.mismatches.append(
                f"m={m}: got {P.format(current)}, expected {P.format(expected)}"
            )
        if m < m_max:
            current = _window_reflect(P, alpha2, _window_reflect(P, alpha1, current, bound), bound)
    logger.debug("Translation check: %d iterates, %d mismatches", report.checked, len(report.mismatches))
    return report


__all__ = ["brute_axioms", "brute_iso", "brute_parity", "brute_translation"]

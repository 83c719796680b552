"""Explicit constructions of the irreducible finite (weak) generalized root systems."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import TYPE_CHECKING

from src.errors import UnsupportedTagError
from src.models.space import FormSpace, Vector, add, scale, sub, unit_vector
from src.models.system import FiniteRootSystem
from src.models.tag import Family, TypeTag
from src.services.exactlin import LinearCoordinates

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

logger = logging.getLogger(__name__)


# ── Standard ε/δ coordinates ──


@dataclass(frozen=True)
class StandardBasis:
    """Orthogonal basis ε_1..ε_m, δ_1..δ_n with (ε_i,ε_i) = a and (δ_j,δ_j) = b."""

    m: int
    n: int
    eps_norm: Q = Q(1)
    delta_norm: Q = Q(-1)

    @property
    def space(self) -> FormSpace:
        labels = [f"e{i + 1}" for i in range(self.m)] + [f"d{j + 1}" for j in range(self.n)]
        return FormSpace.diagonal(labels, [self.eps_norm] * self.m + [self.delta_norm] * self.n)

    @property
    def dim(self) -> int:
        return self.m + self.n

    def eps(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def delta(self, j: int) -> Vector:
        return unit_vector(self.dim, self.m + j)


def _pm(vectors: Iterable[Vector]) -> list[Vector]:
    found: list[Vector] = []
    for v in vectors:
        found.extend((v, scale(-1, v)))
    return found


def _pair_roots(vs: list[Vector]) -> list[Vector]:
    """±v_i ± v_j for i < j."""
    found: list[Vector] = []
    for i, j in itertools.combinations(range(len(vs)), 2):
        found.extend(_pm([add(vs[i], vs[j]), sub(vs[i], vs[j])]))
    return found


def _mixed_roots(xs: list[Vector], ys: list[Vector]) -> list[Vector]:
    """±x_i ± y_j."""
    found: list[Vector] = []
    for x in xs:
        for y in ys:
            found.extend(_pm([add(x, y), sub(x, y)]))
    return found


def _differences(vs: list[Vector]) -> list[Vector]:
    """v_i - v_j for i ≠ j."""
    return [sub(a, b) for a, b in itertools.permutations(vs, 2)]


def _system(basis: StandardBasis, roots: Iterable[Vector]) -> FiniteRootSystem:
    return FiniteRootSystem.create(basis.space, set(roots))


def in_basis(
    ambient: FormSpace, basis: list[Vector], roots: Iterable[Vector], labels: list[str] | None = None
) -> FiniteRootSystem:
    """Re-express ambient roots in coordinates of a basis of their span."""
    coords_of = LinearCoordinates(basis, ambient.dim)
    names = labels or [ambient.format(b) for b in basis]
    gram = [[ambient.form(b, c) for c in basis] for b in basis]
    space = FormSpace.create(names, gram)
    coords: list[Vector] = []
    for r in roots:
        c = coords_of(r)
        if c is not None:
            coords.append(c)
    return FiniteRootSystem.create(space, coords)


# ── Classical systems ──


def _type_a(n: int) -> FiniteRootSystem:
    basis = StandardBasis(n + 1, 0)
    es = [basis.eps(i) for i in range(n + 1)]
    simple = [sub(es[i], es[i + 1]) for i in range(n)]
    return in_basis(basis.space, simple, _differences(es))


def _type_b(n: int) -> FiniteRootSystem:
    basis = StandardBasis(n, 0)
    es = [basis.eps(i) for i in range(n)]
    return _system(basis, _pm(es) + _pair_roots(es))


def _type_c(n: int) -> FiniteRootSystem:
    basis = StandardBasis(n, 0)
    es = [basis.eps(i) for i in range(n)]
    return _system(basis, _pm(scale(2, e) for e in es) + _pair_roots(es))


def _type_d(n: int) -> FiniteRootSystem:
    basis = StandardBasis(n, 0)
    es = [basis.eps(i) for i in range(n)]
    return _system(basis, _pair_roots(es))


def e8_roots() -> list[Vector]:
    """The 240 roots of E8 in the even coordinate system."""
    basis = StandardBasis(8, 0)
    roots = _pair_roots([basis.eps(i) for i in range(8)])
    half = (Q(1, 2), Q(-1, 2))
    for signs in itertools.product(half, repeat=8):
        if sum(1 for s in signs if s > 0) % 2 == 0:
            roots.append(tuple(signs))
    return roots


def _e8_simple_roots() -> list[Vector]:
    h = Q(1, 2)
    e = [unit_vector(8, i) for i in range(8)]
    first = (h, -h, -h, -h, -h, -h, -h, h)
    simple = [first, add(e[0], e[1])]
    simple.extend(sub(e[i + 1], e[i]) for i in range(6))
    return simple


def _type_e(n: int) -> FiniteRootSystem:
    ambient = StandardBasis(8, 0).space
    simple = _e8_simple_roots()[:n]
    return in_basis(ambient, simple, e8_roots(), [f"a{i + 1}" for i in range(n)])


def _type_f4() -> FiniteRootSystem:
    basis = StandardBasis(4, 0)
    es = [basis.eps(i) for i in range(4)]
    halves = [tuple(signs) for signs in itertools.product((Q(1, 2), Q(-1, 2)), repeat=4)]
    return _system(basis, _pm(es) + _pair_roots(es) + halves)


def _g2_like(norm: Q) -> tuple[FormSpace, list[Vector]]:
    """ε1, ε2 with ε3 = -ε1-ε2 and (ε_i,ε_i) = norm, (ε_i,ε_j) = -norm/2."""
    space = FormSpace.create(["e1", "e2"], [[norm, -norm / 2], [-norm / 2, norm]])
    e1, e2 = unit_vector(2, 0), unit_vector(2, 1)
    e3 = scale(-1, add(e1, e2))
    return space, [e1, e2, e3]


def _type_g2() -> FiniteRootSystem:
    space, es = _g2_like(Q(2))
    return FiniteRootSystem.create(space, set(_pm(es) + _differences(es)))


# ── Superalgebra systems ──


def _b0(n: int) -> FiniteRootSystem:
    basis = StandardBasis(0, n)
    ds = [basis.delta(j) for j in range(n)]
    return _system(basis, _pm(ds) + _pm(scale(2, d) for d in ds) + _pair_roots(ds))


def _a_super(m: int, n: int) -> FiniteRootSystem:
    basis = StandardBasis(m + 1, n + 1)
    es = [basis.eps(i) for i in range(m + 1)]
    ds = [basis.delta(j) for j in range(n + 1)]
    roots = _differences(es) + _differences(ds)
    roots += [sub(e, d) for e in es for d in ds] + [sub(d, e) for e in es for d in ds]
    simple = [sub(es[i], es[i + 1]) for i in range(m)]
    simple.append(sub(es[m], ds[0]))
    simple.extend(sub(ds[j], ds[j + 1]) for j in range(n))
    return in_basis(basis.space, simple, roots)


def _b_super(m: int, n: int) -> FiniteRootSystem:
    basis = StandardBasis(m, n)
    es = [basis.eps(i) for i in range(m)]
    ds = [basis.delta(j) for j in range(n)]
    roots = _pm(es) + _pair_roots(es) + _pm(ds) + _pm(scale(2, d) for d in ds)
    roots += _pair_roots(ds) + _mixed_roots(es, ds)
    return _system(basis, roots)


def _c_super(n: int) -> FiniteRootSystem:
    basis = StandardBasis(1, n - 1)
    e = basis.eps(0)
    ds = [basis.delta(j) for j in range(n - 1)]
    roots = _pm(scale(2, d) for d in ds) + _pair_roots(ds) + _mixed_roots([e], ds)
    return _system(basis, roots)


def _d_super(m: int, n: int) -> FiniteRootSystem:
    basis = StandardBasis(m, n)
    es = [basis.eps(i) for i in range(m)]
    ds = [basis.delta(j) for j in range(n)]
    roots = _pair_roots(es) + _pm(scale(2, d) for d in ds) + _pair_roots(ds) + _mixed_roots(es, ds)
    return _system(basis, roots)


def _d21(lam: Q) -> FiniteRootSystem:
    space = FormSpace.diagonal(["e1", "e2", "e3"], [-(1 + lam), 1, lam])
    es = [unit_vector(3, i) for i in range(3)]
    roots = _pm(scale(2, e) for e in es)
    for s2, s3 in itertools.product((1, -1), repeat=2):
        roots.extend(_pm([add(add(es[0], scale(s2, es[1])), scale(s3, es[2]))]))
    return FiniteRootSystem.create(space, set(roots))


def _g3() -> FiniteRootSystem:
    space = FormSpace.create(
        ["e1", "e2", "d"], [[-2, 1, 0], [1, -2, 0], [0, 0, 2]]
    )
    e1, e2, d = (unit_vector(3, i) for i in range(3))
    e3 = scale(-1, add(e1, e2))
    es = [e1, e2, e3]
    roots = _differences(es) + _pm(es) + _pm([d, scale(2, d)]) + _mixed_roots(es, [d])
    return FiniteRootSystem.create(space, set(roots))


def _f4_super() -> FiniteRootSystem:
    basis = StandardBasis(3, 1, delta_norm=Q(-3))
    es = [basis.eps(i) for i in range(3)]
    d = basis.delta(0)
    roots = _pair_roots(es) + _pm(es) + _pm([d])
    for signs in itertools.product((Q(1, 2), Q(-1, 2)), repeat=4):
        roots.append(tuple(signs))
    return _system(basis, roots)


def _c_mn(m: int, n: int, *, with_short: bool = False) -> FiniteRootSystem:
    basis = StandardBasis(m, n)
    es = [basis.eps(i) for i in range(m)]
    ds = [basis.delta(j) for j in range(n)]
    roots = _pm(scale(2, e) for e in es) + _pair_roots(es)
    roots += _pm(scale(2, d) for d in ds) + _pair_roots(ds) + _mixed_roots(es, ds)
    if with_short:
        roots += _pm(es) + _pm(ds)
    return _system(basis, roots)


# ── A(n,n) through Ã(n,n) ──


@dataclass(frozen=True)
class AnnRoot:
    """A root of Ã(n,n): its class in cl(Ã(n,n)) and its E-splitting offset."""

    ambient: Vector
    base_class: Vector
    offset: Q


@dataclass(frozen=True)
class AnnData:
    """Ã(n,n) inside Q^{2n+2} together with its projection onto A(n,n)."""

    n: int
    base: FiniteRootSystem
    roots: tuple[AnnRoot, ...]


def ann_data(n: int) -> AnnData:
    """Roots ε_i-ε_j, δ_i-δ_j and ±(ε_i-δ_j) of Ã(n,n), i, j ≤ n+1.

    Each root α splits as e + t·Id with e in the even span E and
    Id = Σε_i - Σδ_i, so t is the sum of the ε-coefficients over n+1.
    Classes are written in the simple even roots ε_i-ε_{i+1}, δ_j-δ_{j+1}.
    """
    basis = StandardBasis(n + 1, n + 1)
    es = [basis.eps(i) for i in range(n + 1)]
    ds = [basis.delta(j) for j in range(n + 1)]
    identity = sub(
        tuple(sum(col) for col in zip(*es, strict=True)),
        tuple(sum(col) for col in zip(*ds, strict=True)),
    )
    ambient = basis.space
    roots = _differences(es) + _differences(ds)
    roots += [sub(e, d) for e in es for d in ds] + [sub(d, e) for e in es for d in ds]
    simple = [sub(es[i], es[i + 1]) for i in range(n)] + [sub(ds[j], ds[j + 1]) for j in range(n)]
    coords_of = LinearCoordinates(simple, ambient.dim)
    entries: list[AnnRoot] = []
    for r in roots:
        t = sum(r[: n + 1], Q(0)) / (n + 1)
        c = coords_of(sub(r, scale(t, identity)))
        assert c is not None
        entries.append(AnnRoot(ambient=r, base_class=c, offset=t))
    labels = [ambient.format(b) for b in simple]
    gram = [[ambient.form(b, c) for c in simple] for b in simple]
    space = FormSpace.create(labels, gram)
    base = FiniteRootSystem.create(space, {e.base_class for e in entries})
    return AnnData(n=n, base=base, roots=tuple(sorted(entries, key=lambda e: e.ambient)))


# ── Dispatch ──

_BUILDERS: dict[Family, Callable[[TypeTag], FiniteRootSystem]] = {
    Family.A: lambda t: _type_a(t.n),
    Family.B: lambda t: _type_b(t.n),
    Family.C: lambda t: _type_c(t.n),
    Family.D: lambda t: _type_d(t.n),
    Family.E: lambda t: _type_e(t.n),
    Family.F: lambda t: _type_f4(),
    Family.G: lambda t: _type_g2(),
    Family.B0: lambda t: _b0(t.n),
    Family.A_SUPER: lambda t: ann_data(t.n).base if t.m == t.n else _a_super(t.m, t.n),
    Family.B_SUPER: lambda t: _b_super(t.m, t.n),
    Family.C_SUPER: lambda t: _c_super(t.n),
    Family.D_SUPER: lambda t: _d_super(t.m, t.n),
    Family.D21: lambda t: _d21(t.lam if t.lam is not None else Q(1)),
    Family.G3: lambda t: _g3(),
    Family.F4_SUPER: lambda t: _f4_super(),
    Family.C_MN: lambda t: _c_mn(t.m, t.n),
    Family.BC_MN: lambda t: _c_mn(t.m, t.n, with_short=True),
}


def build_finite(tag: TypeTag) -> FiniteRootSystem:
    """Explicit system of a finite catalog type in its standard basis.

    Raises:
        UnsupportedTagError: For affine tags or unknown families.
    """
    if tag.is_affine:
        msg = f"{tag.label} is affine; build it as a presentation"
        raise UnsupportedTagError(msg)
    builder = _BUILDERS.get(tag.family)
    if builder is None:
        msg = f"No finite construction for {tag.label}"
        raise UnsupportedTagError(msg)
    system = builder(tag)
    logger.debug("Built %s with %d roots", tag.label, len(system))
    return system


def bc_system(m: int, n: int) -> FiniteRootSystem:
    """BC(m,n) with the ε-half of size m, in either order of sizes."""
    return _c_mn(m, n, with_short=True)


def expected_root_count(tag: TypeTag) -> int | None:
    """Closed-form |R| for the finite families where it is cheap to state."""
    f, m, n = tag.family, tag.m, tag.n
    counts: dict[Family, Callable[[], int]] = {
        Family.A: lambda: n * (n + 1),
        Family.B: lambda: 2 * n * n,
        Family.C: lambda: 2 * n * n,
        Family.D: lambda: 2 * n * (n - 1),
        Family.B0: lambda: 2 * n * n + 2 * n,
        Family.A_SUPER: lambda: (m + n + 2) * (m + n + 1) if m != n else 2 * n * (n + 1) + 2 * (n + 1) ** 2,
        Family.C_MN: lambda: 2 * (m + n) ** 2,
        Family.BC_MN: lambda: 2 * (m + n) ** 2 + 2 * m + 2 * n,
    }
    builder = counts.get(f)
    return builder() if builder is not None else None

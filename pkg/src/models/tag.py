"""Type labels of irreducible root systems and their canonical forms."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from enum import StrEnum
from fractions import Fraction

from src.errors import InvalidInputError, UnsupportedTagError
from src.models.space import to_fraction


class Family(StrEnum):
    """Families of finite and affine (generalized) root systems."""

    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"
    B0 = "B(0,n)"
    A_SUPER = "A(m,n)"
    B_SUPER = "B(m,n)"
    C_SUPER = "C(n)"
    D_SUPER = "D(m,n)"
    D21 = "D(2,1;lambda)"
    G3 = "G(3)"
    F4_SUPER = "F(4)"
    C_MN = "C(m,n)"
    BC_MN = "BC(m,n)"
    A_TILDE = "A~(n,n)"
    PECULIAR = "C(1,1)^q"
    QUOTIENT = "A~(n,n)^(1)_q"

    @classmethod
    def from_name(cls, name: str) -> Family:
        """Look a family up by member name (case-insensitive) or value.

        Raises:
            UnsupportedTagError: If nothing matches.
        """
        wanted = name.strip()
        for member in cls:
            if wanted.lower() == member.name.lower() or wanted == member.value:
                return member
        msg = f"Unknown family {name!r}"
        raise UnsupportedTagError(msg)


CLASSICAL = frozenset({Family.A, Family.B, Family.C, Family.D, Family.E, Family.F, Family.G})
# Families whose untwisted affinization is not an AGRS.
_WEAK_ONLY = frozenset({Family.C_MN, Family.BC_MN, Family.A_TILDE})
_NON_REDUCED = frozenset({Family.B0, Family.B_SUPER, Family.G3, Family.BC_MN})


def lambda_orbit(lam: Fraction) -> list[Fraction]:
    """The S3 orbit of a D(2,1;λ) parameter."""
    return [
        lam,
        1 / lam,
        -1 - lam,
        -1 / (1 + lam),
        -lam / (1 + lam),
        -(1 + lam) / lam,
    ]


def canonical_lambda(lam: Fraction) -> Fraction:
    if lam in (0, -1):
        msg = f"D(2,1;λ) needs λ ∉ {{0, -1}}, got {lam}"
        raise UnsupportedTagError(msg)
    return max(lambda_orbit(lam))


def canonical_q(q: Fraction) -> Fraction:
    """Representative of q modulo Z and sign, in [0, 1/2]."""
    reduced = q - math.floor(q)
    return min(reduced, 1 - reduced) if reduced else Fraction(0)


@dataclass(frozen=True)
class TypeTag:
    """A classification label such as B(2,1), D_4^(3) or C(1,1)^(1/3).

    Rank parameters live in ``n`` (and ``m`` for two-parameter families);
    ``twist`` is 0 for finite types and r for X^(r).
    """

    family: Family
    m: int = 0
    n: int = 0
    twist: int = 0
    q: Fraction | None = None
    lam: Fraction | None = None

    # ── Derived properties ──

    @property
    def is_affine(self) -> bool:
        return self.twist > 0 or self.family in (Family.PECULIAR, Family.QUOTIENT, Family.A_TILDE)

    @property
    def reduced(self) -> bool:
        if self.family in _NON_REDUCED:
            return False
        if self.twist == 2 and self.family in (Family.C_SUPER, Family.D_SUPER):
            return False
        if self.family == Family.A_SUPER and self.twist in (2, 4):
            return self.m % 2 == 1 and self.n % 2 == 1
        return True

    @property
    def label(self) -> str:
        suffix = f"^({self.twist})" if self.twist else ""
        f = self.family
        if f in CLASSICAL:
            return f"{f.value}_{self.n}{suffix}"
        heads = {
            Family.B0: f"B(0,{self.n})",
            Family.A_SUPER: f"A({self.m},{self.n})",
            Family.B_SUPER: f"B({self.m},{self.n})",
            Family.C_SUPER: f"C({self.n})",
            Family.D_SUPER: f"D({self.m},{self.n})",
            Family.D21: f"D(2,1;{self.lam})",
            Family.G3: "G(3)",
            Family.F4_SUPER: "F(4)",
            Family.C_MN: f"C({self.m},{self.n})",
            Family.BC_MN: f"BC({self.m},{self.n})",
            Family.A_TILDE: f"A~({self.n},{self.n})",
            Family.PECULIAR: f"C(1,1)^({self.q})",
            Family.QUOTIENT: f"A~({self.n},{self.n})^(1)_({self.q})",
        }
        if f in (Family.PECULIAR, Family.QUOTIENT, Family.A_TILDE):
            return heads[f]
        return heads[f] + suffix

    def __str__(self) -> str:
        return self.label

    # ── Canonical form ──

    def canonical(self) -> TypeTag:
        """Resolve aliases and parameter symmetries, then validate ranges.

        Raises:
            UnsupportedTagError: If the tag is out of range or has no meaning.
        """
        tag = _resolve_aliases(self)
        _validate(tag)
        return tag


def _resolve_aliases(tag: TypeTag) -> TypeTag:
    f, m, n, r = tag.family, tag.m, tag.n, tag.twist
    if f in (Family.C_MN, Family.BC_MN) and m > n:
        tag = replace(tag, m=n, n=m)
        m, n = tag.m, tag.n
    if f in CLASSICAL:
        if f in (Family.B, Family.C) and n == 1:
            return replace(tag, family=Family.A)
        if f == Family.C and n == 2:
            return replace(tag, family=Family.B)
        if f == Family.D and n == 3 and r in (0, 1):
            return replace(tag, family=Family.A)
        if f == Family.A and n == 3 and r == 2:
            return replace(tag, family=Family.D)
        return tag
    if f == Family.B_SUPER and m == 0:
        return replace(tag, family=Family.B0, m=0)
    if f == Family.D_SUPER and m == 1 and r in (0, 1):
        return replace(tag, family=Family.C_SUPER, m=0, n=n + 1)
    if f == Family.D_SUPER and (m, n) == (2, 1) and r in (0, 1):
        return TypeTag(Family.D21, twist=r, lam=Fraction(1))
    if f == Family.C_SUPER and n == 2:
        return replace(tag, family=Family.A_SUPER, m=0, n=1)
    if f == Family.D21:
        lam = tag.lam if tag.lam is not None else Fraction(1)
        return replace(tag, lam=canonical_lambda(lam))
    if f == Family.A_SUPER:
        if r in (0, 1):
            if m > n:
                tag = replace(tag, m=n, n=m)
            if (tag.m, tag.n) == (1, 1) and r == 0:
                return TypeTag(Family.C_MN, 1, 1)
            return tag
        if r == 2 and m % 2 == 1 and n % 2 == 0:
            return replace(tag, m=n, n=m)
        if r == 2 and m % 2 == 1 and n % 2 == 1 and m > n:
            return replace(tag, m=n, n=m)
        if r == 4 and m > n:
            return replace(tag, m=n, n=m)
        return tag
    if f == Family.QUOTIENT:
        q = canonical_q(tag.q if tag.q is not None else Fraction(0))
        if n == 1:
            return TypeTag(Family.PECULIAR, 1, 1, q=q)
        return replace(tag, q=q, twist=0)
    if f == Family.PECULIAR:
        q = canonical_q(tag.q if tag.q is not None else Fraction(0))
        return replace(tag, m=1, n=1, q=q, twist=0)
    return tag


def _fail(tag: TypeTag, reason: str) -> None:
    msg = f"Unsupported type {tag.label}: {reason}"
    raise UnsupportedTagError(msg)


def _validate(tag: TypeTag) -> None:
    f, m, n, r = tag.family, tag.m, tag.n, tag.twist
    if r not in (0, 1, 2, 3, 4):
        _fail(tag, "twist must be 1, 2, 3 or 4")
    minimum = {Family.A: 1, Family.B: 2, Family.C: 3, Family.D: 3 if r == 2 else 4}
    if f in minimum and n < minimum[f]:
        _fail(tag, f"rank must be at least {minimum[f]}")
    if f == Family.E and n not in (6, 7, 8):
        _fail(tag, "rank must be 6, 7 or 8")
    if f == Family.F and n != 4:
        _fail(tag, "rank must be 4")
    if f == Family.G and n != 2:
        _fail(tag, "rank must be 2")
    if f in (Family.B0, Family.A_TILDE, Family.QUOTIENT) and n < 1:
        _fail(tag, "n must be at least 1")
    if f == Family.A_SUPER and (n < 1 or m < 0):
        _fail(tag, "needs m >= 0 and n >= 1")
    if f in (Family.B_SUPER, Family.C_MN, Family.BC_MN) and (m < 1 or n < 1):
        _fail(tag, "needs m, n >= 1")
    if f == Family.C_SUPER and n < 3:
        _fail(tag, "n must be at least 3")
    if f == Family.D_SUPER and (m < 2 or n < 1):
        _fail(tag, "needs m >= 2 and n >= 1")
    if f == Family.PECULIAR and (tag.q is None or tag.q == 0):
        _fail(tag, "q must be a non-integer rational")
    if f == Family.QUOTIENT and (n < 2 or tag.q is None):
        _fail(tag, "needs n >= 2 and a rational q")
    if f in (Family.PECULIAR, Family.QUOTIENT, Family.A_TILDE) and r:
        _fail(tag, "takes no twist")
    if r == 0 or f in (Family.PECULIAR, Family.QUOTIENT, Family.A_TILDE):
        return
    if r == 1:
        if f in _WEAK_ONLY:
            _fail(tag, "the untwisted affinization of a weak-only base is not an AGRS")
        if f == Family.A_SUPER and m == n:
            _fail(tag, "use the quotient family A~(n,n)^(1)_q")
        return
    allowed = _TWIST_CHECKS.get((f, r))
    if allowed is None or not allowed(m, n):
        _fail(tag, f"no twist-{r} representative")


_TWIST_CHECKS = {
    (Family.A, 2): lambda m, n: n >= 2 and n != 3,
    (Family.D, 2): lambda m, n: n >= 3,
    (Family.E, 2): lambda m, n: n == 6,
    (Family.D, 3): lambda m, n: n == 4,
    (Family.C_SUPER, 2): lambda m, n: n >= 3,
    (Family.D_SUPER, 2): lambda m, n: m >= 2 and n >= 1,
    (Family.A_SUPER, 2): lambda m, n: (
        (m % 2 == 0 and n % 2 == 1) or (m % 2 == 1 and n % 2 == 1 and (m, n) != (1, 1))
    ),
    (Family.A_SUPER, 4): lambda m, n: m % 2 == 0 and n % 2 == 0 and n >= 2,
}


def make_tag(
    family: Family | str,
    m: int = 0,
    n: int = 0,
    twist: int = 0,
    q: object = None,
    lam: object = None,
) -> TypeTag:
    """Build and canonicalize a tag from loose parameters."""
    fam = family if isinstance(family, Family) else Family.from_name(family)
    q_value = to_fraction(q) if q is not None else None
    lam_value = to_fraction(lam) if lam is not None else None
    if fam in CLASSICAL and n == 0 and m:
        n, m = m, 0
    return TypeTag(fam, m, n, twist, q_value, lam_value).canonical()


# ── Label parsing ──

_LABEL = re.compile(r"^(?P<head>.+?)(?:\^\((?P<sup>[^)]*)\))?(?:_\((?P<sub>[^)]*)\))?$")
_CLASSICAL = re.compile(r"^(?P<f>[A-G])_(?P<n>\d+)$")
_PAIR = re.compile(r"^(?P<f>A|B|C|D|BC)\((?P<m>\d+),(?P<n>\d+)\)$")
_SINGLE = re.compile(r"^C\((?P<n>\d+)\)$")
_D21 = re.compile(r"^D\(2,1(?:;(?P<lam>-?\d+(?:/\d+)?))?\)$")
_TILDE = re.compile(r"^(?:A~|Ã)\((?P<m>\d+),(?P<n>\d+)\)$")


def parse_label(text: str) -> TypeTag:
    """Parse labels such as "A_2^(1)", "B(1,2)", "C(1,1)^(1/3)", "A~(2,2)^(1)_(1/4)".

    Raises:
        UnsupportedTagError: If the label is not recognized.
    """
    match = _LABEL.match(text.strip().replace(" ", ""))
    if match is None:
        msg = f"Unrecognized type label {text!r}"
        raise UnsupportedTagError(msg)
    head, sup, sub = match["head"], match["sup"], match["sub"]
    twist = 0
    q: Fraction | None = None
    try:
        if sup is not None:
            if "/" in sup:
                q = to_fraction(sup)
            else:
                twist = int(sup)
        if sub is not None:
            q = to_fraction(sub)
    except (InvalidInputError, ValueError) as exc:
        msg = f"Bad superscript or subscript in {text!r}"
        raise UnsupportedTagError(msg) from exc

    if (hit := _CLASSICAL.match(head)) is not None:
        return TypeTag(Family(hit["f"]), n=int(hit["n"]), twist=twist).canonical()
    if (hit := _TILDE.match(head)) is not None:
        if hit["m"] != hit["n"]:
            msg = f"A~(m,n) needs m = n in {text!r}"
            raise UnsupportedTagError(msg)
        size = int(hit["n"])
        if sub is not None:
            if twist != 1:
                msg = f"Quotient label must read A~(n,n)^(1)_(q): {text!r}"
                raise UnsupportedTagError(msg)
            return TypeTag(Family.QUOTIENT, n=size, q=q).canonical()
        return TypeTag(Family.A_TILDE, n=size, twist=twist).canonical()
    if (hit := _D21.match(head)) is not None:
        if not hit["lam"]:
            return TypeTag(Family.D_SUPER, 2, 1, twist=twist).canonical()
        return TypeTag(Family.D21, lam=to_fraction(hit["lam"]), twist=twist).canonical()
    if head == "G(3)":
        return TypeTag(Family.G3, twist=twist).canonical()
    if head == "F(4)":
        return TypeTag(Family.F4_SUPER, twist=twist).canonical()
    if (hit := _SINGLE.match(head)) is not None:
        return TypeTag(Family.C_SUPER, n=int(hit["n"]), twist=twist).canonical()
    if (hit := _PAIR.match(head)) is not None:
        m, n = int(hit["m"]), int(hit["n"])
        letter = hit["f"]
        if letter == "C" and q is not None:
            if (m, n) != (1, 1):
                msg = f"Only C(1,1) carries a peculiar parameter: {text!r}"
                raise UnsupportedTagError(msg)
            return TypeTag(Family.PECULIAR, 1, 1, q=q).canonical()
        family = {
            "A": Family.A_SUPER,
            "B": Family.B0 if m == 0 else Family.B_SUPER,
            "C": Family.C_MN,
            "D": Family.D_SUPER,
            "BC": Family.BC_MN,
        }[letter]
        return TypeTag(family, m, n, twist).canonical()
    msg = f"Unrecognized type label {text!r}"
    raise UnsupportedTagError(msg)


# ── Base systems of affine types ──


def affine_base(tag: TypeTag) -> TypeTag:
    """Finite type of cl(R) for an affine tag.

    Raises:
        UnsupportedTagError: If the tag is finite.
    """
    f, m, n, r = tag.family, tag.m, tag.n, tag.twist
    if f == Family.PECULIAR or (f == Family.A_TILDE and n == 1):
        return TypeTag(Family.C_MN, 1, 1)
    if f in (Family.QUOTIENT, Family.A_TILDE):
        return TypeTag(Family.A_SUPER, n, n)
    if r == 0:
        msg = f"{tag.label} is not an affine type"
        raise UnsupportedTagError(msg)
    if r == 1:
        return replace(tag, twist=0).canonical()
    if f == Family.A and r == 2:
        return TypeTag(Family.B0, n=n // 2) if n % 2 == 0 else TypeTag(Family.C, n=(n + 1) // 2).canonical()
    if f == Family.D and r == 2:
        return TypeTag(Family.B, n=n - 1).canonical()
    if f == Family.E:
        return TypeTag(Family.F, n=4)
    if f == Family.D and r == 3:
        return TypeTag(Family.G, n=2)
    if f == Family.C_SUPER:
        return TypeTag(Family.B0, n=n - 1)
    if f == Family.D_SUPER:
        return TypeTag(Family.B_SUPER, m - 1, n)
    if f == Family.A_SUPER and r == 2 and m % 2 == 1:
        return TypeTag(Family.C_MN, (m + 1) // 2, (n + 1) // 2).canonical()
    if f == Family.A_SUPER and r == 2:
        if m == 0:
            return TypeTag(Family.B0, n=(n + 1) // 2)
        return TypeTag(Family.BC_MN, m // 2, (n + 1) // 2).canonical()
    if f == Family.A_SUPER and r == 4:
        if m == 0:
            return TypeTag(Family.B0, n=n // 2)
        return TypeTag(Family.BC_MN, m // 2, n // 2).canonical()
    msg = f"No base known for {tag.label}"
    raise UnsupportedTagError(msg)


def twisted_options(base: TypeTag, twist: int) -> list[TypeTag]:
    """All valid twist-r affine tags whose base is the given finite type."""
    base = base.canonical()
    if base.is_affine:
        return []
    if twist == 1:
        try:
            return [replace(base, twist=1).canonical()]
        except UnsupportedTagError:
            return []
    f, m, n = base.family, base.m, base.n
    options: list[TypeTag] = []
    if twist == 2:
        if f == Family.B:
            options = [TypeTag(Family.D, n=n + 1, twist=2)]
        elif f == Family.C:
            options = [TypeTag(Family.A, n=2 * n - 1, twist=2)]
        elif f == Family.F:
            options = [TypeTag(Family.E, n=6, twist=2)]
        elif f == Family.B0:
            options = [
                TypeTag(Family.C_SUPER, n=n + 1, twist=2),
                TypeTag(Family.A, n=2 * n, twist=2),
                TypeTag(Family.A_SUPER, 0, 2 * n - 1, twist=2),
            ]
        elif f == Family.B_SUPER:
            options = [TypeTag(Family.D_SUPER, m + 1, n, twist=2)]
        elif f == Family.C_MN:
            options = [TypeTag(Family.A_SUPER, 2 * m - 1, 2 * n - 1, twist=2)]
        elif f == Family.BC_MN:
            options = [
                TypeTag(Family.A_SUPER, 2 * m, 2 * n - 1, twist=2),
                TypeTag(Family.A_SUPER, 2 * n, 2 * m - 1, twist=2),
            ]
    elif twist == 3 and f == Family.G:
        options = [TypeTag(Family.D, n=4, twist=3)]
    elif twist == 4:
        if f == Family.B0:
            options = [TypeTag(Family.A_SUPER, 0, 2 * n, twist=4)]
        elif f == Family.BC_MN:
            options = [TypeTag(Family.A_SUPER, 2 * m, 2 * n, twist=4)]
    resolved: set[TypeTag] = set()
    for option in options:
        try:
            resolved.add(option.canonical())
        except UnsupportedTagError:
            continue
    return sorted(resolved, key=lambda t: t.label)


def twisted_over(base: TypeTag, twist: int) -> TypeTag:
    """The twist-r affine representative over a finite base type.

    Raises:
        UnsupportedTagError: If there is no such representative or several.
    """
    base = base.canonical()
    if base.is_affine:
        msg = f"{base.label} is already affine"
        raise UnsupportedTagError(msg)
    resolved = twisted_options(base, twist)
    if not resolved:
        msg = f"No twist-{twist} representative over {base.label}"
        raise UnsupportedTagError(msg)
    if len(resolved) > 1:
        names = ", ".join(t.label for t in resolved)
        msg = f"Several twist-{twist} representatives over {base.label}: {names}; give the full label"
        raise UnsupportedTagError(msg)
    return resolved[0]

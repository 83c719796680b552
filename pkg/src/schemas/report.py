"""Pydantic schemas for axiom verdicts and oracle results."""

from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, Field


class AxiomId(StrEnum):
    """Identifiers of the checked axioms and structural properties."""

    NONZERO_SPAN = "(0)"
    NONDEGENERATE = "nondegenerate"
    AFFINE_KERNEL = "(0')"
    EVEN_REFLECTION = "(1)"
    ODD_REFLECTION = "(2)"
    WEAK_ODD_REFLECTION = "(2')"
    REDUCED = "reduced"
    IRREDUCIBLE = "irreducible"
    ISOTROPIC = "isotropic"


# Axioms whose failure disqualifies a system from being a weak GRS / AGRS.
WEAK_AXIOMS = frozenset(
    {
        AxiomId.NONZERO_SPAN,
        AxiomId.NONDEGENERATE,
        AxiomId.AFFINE_KERNEL,
        AxiomId.EVEN_REFLECTION,
        AxiomId.WEAK_ODD_REFLECTION,
    }
)


class Violation(BaseModel):
    """One failed axiom instance with the roots that witness it."""

    axiom: AxiomId
    witness: list[str] = Field(default_factory=list, description="Formatted witness vectors")
    detail: str = Field(default="", description="Human-readable explanation")


class AxiomReport(BaseModel):
    """Verdict of an axiom check on a finite system or an affine presentation."""

    kind: Literal["finite", "affine"] = "finite"
    is_rs: bool = False
    is_grs: bool = False
    is_weak_grs: bool = False
    is_reduced: bool = False
    is_irreducible: bool = False
    is_finite: bool = Field(default=True, description="False for presentations with infinite fibers")
    violations: list[Violation] = Field(default_factory=list)
    checked: int = Field(default=0, description="Axiom instances examined")
    skipped: int = Field(default=0, description="Instances skipped (window boundary)")

    @property
    def is_valid(self) -> bool:
        """Weak GRS for finite systems, AGRS for affine presentations."""
        return self.is_weak_grs if self.kind == "finite" else self.is_grs

    def violations_of(self, axiom: AxiomId) -> list[Violation]:
        return [v for v in self.violations if v.axiom == axiom]


class OracleReport(BaseModel):
    """Result of a brute-force cross-check."""

    checked: int = 0
    mismatches: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

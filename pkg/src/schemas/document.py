"""Pydantic schema of the JSON document exchanged by the CLI."""

from typing import Annotated, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, StringConstraints, model_validator

FORMAT_VERSION = "1.0"


def _int_to_str(value: object) -> object:
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return value


Rational = Annotated[
    str,
    BeforeValidator(_int_to_str),
    StringConstraints(strip_whitespace=True, pattern=r"^-?\d+(/[1-9]\d*)?$"),
]


class SpaceDocument(BaseModel):
    """Basis labels and a row-major Gram matrix of rational strings."""

    model_config = ConfigDict(extra="forbid")

    dim: int = Field(..., ge=1, description="Dimension of the space")
    basis_labels: list[str] = Field(..., description="One label per basis vector")
    gram: list[list[Rational]] = Field(..., description="Symmetric Gram matrix")

    @model_validator(mode="after")
    def _check_shape(self) -> "SpaceDocument":
        if len(self.basis_labels) != self.dim:
            msg = f"basis_labels has {len(self.basis_labels)} entries for dim {self.dim}"
            raise ValueError(msg)
        if len(self.gram) != self.dim or any(len(row) != self.dim for row in self.gram):
            msg = f"gram must be {self.dim}x{self.dim}"
            raise ValueError(msg)
        return self


class FiberDocument(BaseModel):
    """Offsets over one base class: residues + step·Z, or the bare residues if step is 0."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    base_class: list[Rational] = Field(..., alias="class")
    step: Rational = Field(default="0")
    residues: list[Rational] = Field(..., min_length=1)


class SystemDocument(BaseModel):
    """A finite root system (``roots``) or an affine presentation (``fibers``)."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    format_version: str = Field(default=FORMAT_VERSION)
    kind: Literal["finite", "affine"]
    space: SpaceDocument
    delta_label: str | None = Field(default=None, description="Name of δ (affine only)")
    roots: list[list[Rational]] | None = None
    fibers: list[FiberDocument] | None = None
    metadata: dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_kind(self) -> "SystemDocument":
        if self.kind == "finite":
            if self.roots is None or self.fibers is not None:
                msg = "a finite document needs 'roots' and no 'fibers'"
                raise ValueError(msg)
            vectors = self.roots
        else:
            if self.fibers is None or self.roots is not None:
                msg = "an affine document needs 'fibers' and no 'roots'"
                raise ValueError(msg)
            vectors = [f.base_class for f in self.fibers]
        for i, v in enumerate(vectors):
            if len(v) != self.space.dim:
                msg = f"vector {i} has {len(v)} coordinates, expected {self.space.dim}"
                raise ValueError(msg)
        return self

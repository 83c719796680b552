"""Parse and serialize system documents; convert them to and from the domain types."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from src.errors import DocumentParseError, InvalidInputError
from src.models.presentation import AffinePresentation, Fiber
from src.models.space import FormSpace, Vector, format_rational, to_fraction
from src.models.system import FiniteRootSystem
from src.schemas.document import FiberDocument, SpaceDocument, SystemDocument

logger = logging.getLogger(__name__)


def _location(loc: tuple[int | str, ...]) -> str:
    return ".".join(str(part) for part in loc) or "<document>"


def parse(text: str) -> SystemDocument:
    """Validate JSON text against the document schema.

    Raises:
        DocumentParseError: With ``line``/``column`` for JSON syntax errors,
            or the field path for schema errors.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        msg = f"line {exc.lineno} column {exc.colno}: {exc.msg}"
        raise DocumentParseError(msg) from exc
    try:
        return SystemDocument.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        msg = f"{_location(first['loc'])}: {first['msg']}"
        if exc.error_count() > 1:
            msg += f" (and {exc.error_count() - 1} more)"
        raise DocumentParseError(msg) from exc


def serialize(doc: SystemDocument) -> str:
    """Stable JSON text: two-space indent, field order of the schema, trailing newline."""
    return doc.model_dump_json(by_alias=True, exclude_none=True, indent=2) + "\n"


def _vec(v: Vector) -> list[str]:
    return [format_rational(x) for x in v]


def _space_document(space: FormSpace) -> SpaceDocument:
    return SpaceDocument(
        dim=space.dim,
        basis_labels=list(space.basis_labels),
        gram=[_vec(row) for row in space.gram],
    )


def to_document(
    system: FiniteRootSystem | AffinePresentation, metadata: dict[str, str] | None = None
) -> SystemDocument:
    """Canonical document of a system; roots and fibers come out sorted."""
    meta = dict(sorted((metadata or {}).items()))
    if isinstance(system, AffinePresentation):
        fibers = [
            FiberDocument(
                base_class=_vec(f.base_class),
                step=format_rational(f.step),
                residues=_vec(f.residues),
            )
            for f in system.fibers
        ]
        return SystemDocument(
            kind="affine",
            space=_space_document(system.base.space),
            delta_label=system.delta_label,
            fibers=fibers,
            metadata=meta,
        )
    return SystemDocument(
        kind="finite",
        space=_space_document(system.space),
        roots=[_vec(r) for r in system.roots],
        metadata=meta,
    )


def from_document(doc: SystemDocument) -> FiniteRootSystem | AffinePresentation:
    """Build the domain object a document describes.

    Raises:
        DocumentParseError: On duplicate roots or fibers, a non-symmetric
            Gram matrix, or inconsistent fibers.
    """
    try:
        space = FormSpace.create(doc.space.basis_labels, doc.space.gram)
        if doc.kind == "finite":
            roots = [tuple(to_fraction(x) for x in r) for r in doc.roots or []]
            return FiniteRootSystem.create(space, roots)
        fibers = [
            Fiber.create(tuple(to_fraction(x) for x in f.base_class), to_fraction(f.step), f.residues)
            for f in doc.fibers or []
        ]
        base = FiniteRootSystem.create(space, (f.base_class for f in fibers))
        return AffinePresentation.create(base, fibers, doc.delta_label or "delta")
    except InvalidInputError as exc:
        raise DocumentParseError(str(exc)) from exc


def load(path: str | Path) -> FiniteRootSystem | AffinePresentation:
    """Read a document file and build its system.

    Raises:
        DocumentParseError: If the file is unreadable or invalid.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        msg = f"{path}: {exc}"
        raise DocumentParseError(msg) from exc
    logger.debug("Loaded document %s", path)
    return from_document(parse(text))


def dump(system: FiniteRootSystem | AffinePresentation, metadata: dict[str, str] | None = None) -> str:
    return serialize(to_document(system, metadata))


__all__ = ["dump", "from_document", "load", "parse", "serialize", "to_document"]

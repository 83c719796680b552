"""Pydantic schemas for reports and documents."""

from src.schemas.document import SystemDocument  # noqa: F401
from src.schemas.report import AxiomId, AxiomReport, OracleReport, Violation  # noqa: F401

__all__ = [
    "AxiomId",
    "AxiomReport",
    "OracleReport",
    "SystemDocument",
    "Violation",
]

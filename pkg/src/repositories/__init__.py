"""Catalog access."""

from src.repositories.catalog_repo import CatalogRepository  # noqa: F401

__all__ = ["CatalogRepository"]

"""Shared test fixtures for the root system toolkit."""

from collections.abc import Callable

import pytest

from src.config import Settings
from src.models.presentation import AffinePresentation
from src.models.space import FormSpace
from src.models.system import FiniteRootSystem
from src.models.tag import parse_label
from src.repositories.catalog_repo import CatalogRepository
from src.services.classify import ClassifierService


@pytest.fixture(scope="session")
def settings() -> Settings:
    """Default settings, independent of any local .env file."""
    return Settings(_env_file=None)


@pytest.fixture(scope="session")
def repo(settings: Settings) -> CatalogRepository:
    return CatalogRepository(settings)


@pytest.fixture(scope="session")
def classifier(repo: CatalogRepository, settings: Settings) -> ClassifierService:
    return ClassifierService(repo, settings)


@pytest.fixture(scope="session")
def finite(repo: CatalogRepository) -> Callable[[str], FiniteRootSystem]:
    """Build a finite catalog system from its label."""
    return lambda label: repo.finite(parse_label(label))


@pytest.fixture(scope="session")
def affine(repo: CatalogRepository) -> Callable[[str], AffinePresentation]:
    """Build an affine catalog presentation from its label."""
    return lambda label: repo.affine(parse_label(label))


@pytest.fixture
def plane() -> FormSpace:
    """Euclidean Q^2 with labels x, y."""
    return FormSpace.diagonal(["x", "y"], [1, 1])


@pytest.fixture
def super_plane() -> FormSpace:
    """Q^2 with (e,e) = 1 and (d,d) = -1."""
    return FormSpace.diagonal(["e", "d"], [1, -1])

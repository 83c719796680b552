"""Repository of catalog systems, memoized per canonical tag."""

from __future__ import annotations

import logging
from functools import lru_cache

from src.config import Settings, get_settings
from src.errors import UnsupportedTagError
from src.models.presentation import AffinePresentation
from src.models.system import FiniteRootSystem
from src.models.tag import Family, TypeTag
from src.services.affsys import (
    build_finite_Ann,
    build_peculiar,
    build_quotient,
    build_twisted,
    build_untwisted,
)
from src.services.catalog import build_finite

logger = logging.getLogger(__name__)


class CatalogRepository:
    """Access layer for explicit catalog systems.

    Built systems are immutable, so one cache per repository instance is
    shared by every caller.
    """

    def __init__(self, settings: Settings | None = None) -> None:
        self._settings = settings or get_settings()
        self._cached = lru_cache(maxsize=self._settings.catalog_cache_size)(self._build)

    def make(self, tag: TypeTag) -> FiniteRootSystem | AffinePresentation:
        """Build (or fetch) the explicit system of a tag.

        Args:
            tag: Any valid tag; it is canonicalized first.

        Returns:
            A FiniteRootSystem for finite tags, an AffinePresentation otherwise.

        Raises:
            UnsupportedTagError: If the tag is out of range.
        """
        return self._cached(tag.canonical())

    def finite(self, tag: TypeTag) -> FiniteRootSystem:
        """Like make, for tags known to be finite.

        Raises:
            UnsupportedTagError: If the tag is affine.
        """
        system = self.make(tag)
        if not isinstance(system, FiniteRootSystem):
            msg = f"{tag.label} is an affine type"
            raise UnsupportedTagError(msg)
        return system

    def affine(self, tag: TypeTag) -> AffinePresentation:
        """Like make, for affine tags.

        Raises:
            UnsupportedTagError: If the tag is finite.
        """
        system = self.make(tag)
        if not isinstance(system, AffinePresentation):
            msg = f"{tag.label} is a finite type"
            raise UnsupportedTagError(msg)
        return system

    def cache_info(self) -> str:
        return str(self._cached.cache_info())

    @staticmethod
    def _build(tag: TypeTag) -> FiniteRootSystem | AffinePresentation:
        logger.debug("Catalog miss for %s", tag.label)
        if tag.family == Family.A_TILDE:
            return build_finite_Ann(tag.n)
        if tag.family == Family.QUOTIENT:
            return build_quotient(tag.n, tag.q)
        if tag.family == Family.PECULIAR:
            return build_peculiar(tag.q)
        if tag.twist == 1:
            return build_untwisted(TypeTag(tag.family, tag.m, tag.n, 0, tag.q, tag.lam))
        if tag.twist > 1:
            return build_twisted(tag)
        return build_finite(tag)

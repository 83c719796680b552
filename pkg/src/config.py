"""Centralized application configuration using pydantic-settings."""

from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables and .env file."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="AGRS_",
        extra="ignore",
    )

    # ── Application ──
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    output_format: Literal["text", "json"] = "text"

    # ── Validation & analysis ──
    max_violations_per_axiom: int = 50
    parity_enumeration_max_dim: int = 20
    catalog_cache_size: int = 256

    # ── Oracle limits ──
    oracle_iso_max_roots: int = 14
    oracle_parity_max_roots: int = 16
    oracle_window_max_offset: int = 6


def get_settings() -> Settings:
    """Create and return a Settings instance."""
    return Settings()

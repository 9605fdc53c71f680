"""
Configuration management for spinnet.

This module handles loading, validation, and management of evaluator
configuration from environment variables and provides sensible defaults.
"""

import os
from dataclasses import dataclass
import logging

from .errors import ConfigurationError

logger = logging.getLogger(__name__)

__all__ = ["SpinNetConfig", "ConfigurationError", "VALID_LOG_LEVELS"]

VALID_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


@dataclass
class SpinNetConfig:
    """Configuration shared by the evaluators and the CLI."""

    # Projector contraction
    dim_cap: int = 10**6

    # Monte Carlo
    chunk_size: int = 4096
    workers: int = 1

    # Exact recoupling
    step_budget: int = 100_000
    max_expansion_terms: int = 200_000
    exact_fallback: bool = True

    log_level: str = "WARNING"

    @classmethod
    def from_environment(cls) -> "SpinNetConfig":
        """Create configuration from environment variables."""
        logger.debug("Loading configuration from environment variables")

        config = cls(
            dim_cap=cls._parse_int("SPINNET_DIM_CAP", 10**6),
            chunk_size=cls._parse_int("SPINNET_CHUNK_SIZE", 4096),
            workers=cls._parse_int("SPINNET_WORKERS", 1),
            step_budget=cls._parse_int("SPINNET_STEP_BUDGET", 100_000),
            max_expansion_terms=cls._parse_int("SPINNET_MAX_TERMS", 200_000),
            exact_fallback=cls._parse_bool("SPINNET_EXACT_FALLBACK", True),
            log_level=os.getenv("SPINNET_LOG_LEVEL", "WARNING").upper(),
        )

        logger.info(
            f"Configuration loaded: dim_cap={config.dim_cap}, "
            f"chunk_size={config.chunk_size}, workers={config.workers}"
        )
        return config

    @staticmethod
    def _parse_int(env_var: str, default: int) -> int:
        """Parse integer from environment variable."""
        value = os.getenv(env_var)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            raise ConfigurationError(f"{env_var} must be a valid integer, got: {value}")

    @staticmethod
    def _parse_bool(env_var: str, default: bool) -> bool:
        """Parse boolean from environment variable."""
        value = os.getenv(env_var)
        if value is None:
            return default

        value_lower = value.lower()
        if value_lower in ("true", "1", "yes", "on"):
            return True
        elif value_lower in ("false", "0", "no", "off"):
            return False
        else:
            raise ConfigurationError(f"{env_var} must be a boolean value, got: {value}")

    def validate(self) -> None:
        """Validate all configuration options."""
        logger.debug("Validating configuration")

        self._validate_numeric_ranges()
        self._validate_log_level()

        logger.info("Configuration validation completed successfully")

    def _validate_numeric_ranges(self) -> None:
        """Validate numeric configuration ranges."""
        ranges = [
            ("SPINNET_DIM_CAP", self.dim_cap, 1, 10**9),
            ("SPINNET_CHUNK_SIZE", self.chunk_size, 1, 10**7),
            ("SPINNET_WORKERS", self.workers, 1, 256),
            ("SPINNET_STEP_BUDGET", self.step_budget, 1, 10**9),
            ("SPINNET_MAX_TERMS", self.max_expansion_terms, 1, 10**9),
        ]
        for name, value, low, high in ranges:
            if not low <= value <= high:
                raise ConfigurationError(
                    f"{name} must be between {low} and {high}, got: {value}"
                )

    def _validate_log_level(self) -> None:
        """Validate log level option."""
        if self.log_level not in VALID_LOG_LEVELS:
            raise ConfigurationError(
                f"SPINNET_LOG_LEVEL must be one of {sorted(VALID_LOG_LEVELS)}, "
                f"got: {self.log_level}"
            )

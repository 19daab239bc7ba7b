"""
symbreak Configuration Management
Limits loading, environment overrides and validation.
"""

import os
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, PositiveInt, ValidationError

from symbreak.core.errors import ConfigError

# Load environment variables
load_dotenv()


class EngineConfig(BaseModel):
    """Limits for automorphism enumeration."""
    search_limit: PositiveInt = 12
    element_cap: PositiveInt = 1_000_000


class OracleConfig(BaseModel):
    """Limits for the exhaustive oracles."""
    budget: PositiveInt = 10_000_000
    adversarial_max_edges: PositiveInt = 5
    spot_checks: int = 20
    spot_check_palette: PositiveInt = 9


class CertifyConfig(BaseModel):
    """Defaults for the certification sweeps."""
    palette: PositiveInt = 9
    theorem_seeds: PositiveInt = 20
    lemma_seeds: PositiveInt = 5
    total_seeds: PositiveInt = 10
    reduction_samples: PositiveInt = 1000
    reduction_max_n: PositiveInt = 8


class InputConfig(BaseModel):
    """Limits applied while parsing graphs."""
    max_order: PositiveInt = 100_000


class LimitsConfig(BaseModel):
    """Complete limits configuration."""
    input: InputConfig = InputConfig()
    engine: EngineConfig = EngineConfig()
    oracle: OracleConfig = OracleConfig()
    certify: CertifyConfig = CertifyConfig()


def _env_int(name: str, default: int) -> int:
    """Read a positive integer override from the environment."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


class SymbreakSettings:
    """Main configuration class for symbreak."""

    def __init__(self, config_path: Optional[Path] = None):
        # Project structure: src/symbreak/config/settings.py
        self.config_dir = Path(__file__).parent
        self.config_path = config_path or self.config_dir / "limits.yaml"
        self.limits = self._load_limits()

    def _load_limits(self) -> LimitsConfig:
        """Load limits from the YAML file."""
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                config_data = yaml.safe_load(f) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"{self.config_path} is not valid YAML: {exc}") from None
        if not isinstance(config_data, dict):
            raise ConfigError(f"{self.config_path} must hold a mapping of sections")

        try:
            return LimitsConfig(**config_data)
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(part) for part in first["loc"])
            raise ConfigError(f"{self.config_path}: {where}: {first['msg']}") from None

    # Environment-aware getters
    @property
    def max_order(self) -> int:
        return _env_int("SYMBREAK_MAX_ORDER", self.limits.input.max_order)

    @property
    def search_limit(self) -> int:
        return _env_int("SYMBREAK_SEARCH_LIMIT", self.limits.engine.search_limit)

    @property
    def element_cap(self) -> int:
        return _env_int("SYMBREAK_ELEMENT_CAP", self.limits.engine.element_cap)

    @property
    def budget(self) -> int:
        return _env_int("SYMBREAK_BUDGET", self.limits.oracle.budget)

    @property
    def log_level(self) -> str:
        return os.getenv("SYMBREAK_LOG_LEVEL", "WARNING").upper()

    @property
    def debug_mode(self) -> bool:
        return os.getenv("SYMBREAK_DEBUG", "false").lower() == "true"


# Global settings instance
settings = SymbreakSettings()

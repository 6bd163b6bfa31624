from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

from app.nn.model import Model
from app.nn.serialization import load_model


class Settings(BaseSettings):
    """Pipeline settings, overridable through ELASTO_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="ELASTO_", env_file=".env", extra="ignore"
    )

    # Runtime
    environment: str = "development"
    log_level: str = "INFO"

    # Reproducibility: fallback for every --seed flag
    seed: int = 0

    # Pair-level parallelism (simulate, label)
    workers: int = 1
    progress: bool = True

    # Oracle thresholds
    ncc_threshold: float = 0.9
    disp_threshold: float = 0.5

    # Selector / strain defaults
    window: int = 8
    ls_window: int = 63


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings."""
    return Settings()


@lru_cache(maxsize=4)
def _load_cached_model(path: str, mtime_ns: int) -> Model:
    return load_model(path)


def get_model(path: str | Path) -> Model:
    """Load a frozen classifier once per file version; callers must not train it."""
    resolved = Path(path).resolve()
    mtime_ns = resolved.stat().st_mtime_ns if resolved.exists() else -1
    return _load_cached_model(str(resolved), mtime_ns)

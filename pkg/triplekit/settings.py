"""Configuration for triplekit.

Loads run defaults from config.yaml if present, falls back to built-in defaults.
TRIPLEKIT_SEED (environment or .env) overrides the default seed only.
"""

import os
from pathlib import Path

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .engine.tolerance import Tolerance

load_dotenv()

# Find project root (where config.yaml lives)
_PROJECT_ROOT = Path(__file__).parent.parent
_CONFIG_PATH = _PROJECT_ROOT / "config.yaml"

# Defaults (used if config.yaml is missing)
_DEFAULTS = {
    "seed": 0,
    "tol_abs": 1e-9,
    "tol_rel": 1e-9,
    "threshold": 1e-8,
    "samples": {
        "norm_axiom": 1000,
        "peirce": 200,
        "spin_model": 1000,
        "lorentz": 300,
        "reconstruction_cases": 200,
        "reconstruction_samples": 300,
        "phase_pairs": 100,
        "atomic_samples": 300,
    },
}


def _load_config() -> dict:
    """Load configuration from YAML file or return defaults."""
    if _CONFIG_PATH.exists():
        with open(_CONFIG_PATH) as f:
            config = yaml.safe_load(f) or {}
        samples = {**_DEFAULTS["samples"], **(config.get("samples") or {})}
        # Merge with defaults (config values override defaults)
        return {**_DEFAULTS, **config, "samples": samples}
    return _DEFAULTS


_config = _load_config()


def _default_seed() -> int:
    env_seed = os.getenv("TRIPLEKIT_SEED")
    if env_seed is not None and env_seed.strip():
        return int(env_seed)
    return int(_config["seed"])


# Master seed for randomized suites
DEFAULT_SEED: int = _default_seed()

# Predicate tolerances
DEFAULT_TOL_ABS: float = float(_config["tol_abs"])
DEFAULT_TOL_REL: float = float(_config["tol_rel"])

# Reconstruction acceptance threshold
DEFAULT_THRESHOLD: float = float(_config["threshold"])

# Per-suite sample counts
SUITE_SAMPLES: dict[str, int] = {k: int(v) for k, v in _config["samples"].items()}


class RunConfig(BaseModel):
    """Everything a CLI run or self-test depends on.

    Identical configs produce byte-identical JSON reports.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = DEFAULT_SEED
    tol_abs: float = DEFAULT_TOL_ABS
    tol_rel: float = DEFAULT_TOL_REL
    threshold: float = DEFAULT_THRESHOLD
    samples: dict[str, int] = Field(default_factory=lambda: dict(SUITE_SAMPLES))

    @field_validator("tol_abs", "tol_rel", "threshold")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("tolerances must be positive")
        return value

    @field_validator("samples")
    @classmethod
    def _positive_counts(cls, value: dict[str, int]) -> dict[str, int]:
        bad = [name for name, count in value.items() if count <= 0]
        if bad:
            raise ValueError(f"sample counts must be positive: {', '.join(sorted(bad))}")
        return value

    def tolerance(self) -> Tolerance:
        return Tolerance(abs=self.tol_abs, rel=self.tol_rel)

    def sample_count(self, suite: str) -> int:
        return self.samples.get(suite, SUITE_SAMPLES.get(suite, 100))


def load_run_config(
    seed: int | None = None,
    tol_abs: float | None = None,
    tol_rel: float | None = None,
    threshold: float | None = None,
    samples: int | None = None,
) -> RunConfig:
    """
    Build a RunConfig from settings plus CLI overrides.

    Args:
        seed: Explicit seed (wins over TRIPLEKIT_SEED and config.yaml)
        tol_abs: Absolute tolerance override
        tol_rel: Relative tolerance override
        threshold: Reconstruction residual threshold override
        samples: If given, replaces every per-suite sample count

    Returns:
        Validated RunConfig
    """
    overrides: dict = {
        "seed": seed,
        "tol_abs": tol_abs,
        "tol_rel": tol_rel,
        "threshold": threshold,
    }
    if samples is not None:
        overrides["samples"] = {name: samples for name in SUITE_SAMPLES}
    return RunConfig(**{k: v for k, v in overrides.items() if v is not None})

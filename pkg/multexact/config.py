"""
Central configuration for multexact.
All values can be overridden via environment variables or a local config.json.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

_ROOT = Path(__file__).parent.parent
_CONFIG_FILE = _ROOT / "config.json"
_ENV_PREFIX = "MULTEXACT_"


@dataclass
class Config:
    # API
    api_host: str = "127.0.0.1"
    api_port: int = 8766
    # Comma-separated list of allowed CORS origins.
    allowed_origins: str = "http://localhost:5173,http://localhost:3000"

    # Data
    treatment_label: str = "trt"
    control_label: str = "ctr"
    max_endpoints: int = 4                  # support size grows combinatorially in k

    # Exact distributions
    max_support: int = 10_000_000           # cap on enumerated y-vectors / DP states

    # Search
    alpha: str = "0.025"                    # parsed to an exact rational by callers
    max_iter: int = 500_000                 # branch-and-bound iteration cap

    # Power studies
    threads: int = 1
    enumeration_cap: int = 200_000          # max margins enumerated by exact power

    def __post_init__(self):
        if self.max_endpoints < 1:
            raise ValueError("max_endpoints must be >= 1")
        if self.threads < 1:
            self.threads = 1

    @classmethod
    def load(cls, path: Path | None = None) -> "Config":
        cfg = cls()
        config_file = path or _CONFIG_FILE
        if config_file.exists():
            overrides = json.loads(config_file.read_text())
            for k, v in overrides.items():
                if hasattr(cfg, k):
                    setattr(cfg, k, v)
        # environment variable overrides (MULTEXACT_*)
        for k in cfg.__dataclass_fields__:  # type: ignore[attr-defined]
            env_key = f"{_ENV_PREFIX}{k.upper()}"
            if env_key in os.environ:
                setattr(cfg, k, type(getattr(cfg, k))(os.environ[env_key]))
        cfg.__post_init__()
        return cfg


# Module-level singleton
config = Config.load()

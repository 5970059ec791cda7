"""
Configuration system for codecrypt-lab.

Manages lab settings stored in ~/.codecrypt-lab/config.json (the directory
can be moved with the CODECRYPT_LAB_HOME environment variable).
Provides sensible defaults for all settings.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any


def config_dir() -> Path:
    """Directory holding config.json."""
    home = os.environ.get("CODECRYPT_LAB_HOME")
    return Path(home) if home else Path.home() / ".codecrypt-lab"


def config_file() -> Path:
    return config_dir() / "config.json"


@dataclass
class LabConfig:
    """Lab configuration with sensible defaults."""

    # Reproducibility
    seed: int = 2021

    # Budgets
    enumeration_budget: int = 2**24  # brute-force oracles
    iteration_budget: int = 100_000  # randomized solvers
    time_budget_s: float = 60.0
    cfs_retry_limit: int = 2**16

    # Output
    output: str = "human"  # "human", "json"
    log_level: str = "INFO"

    def save(self) -> None:
        """Persist config to disk."""
        config_dir().mkdir(parents=True, exist_ok=True)
        config_file().write_text(
            json.dumps(asdict(self), indent=2, ensure_ascii=False),
            encoding="utf-8",
        )

    @classmethod
    def load(cls) -> "LabConfig":
        """Load config from disk, falling back to defaults."""
        path = config_file()
        if not path.exists():
            return cls()
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            # Only use known fields, ignore unknown keys
            known = {f.name for f in fields(cls)}
            filtered = {k: v for k, v in data.items() if k in known}
            return cls(**filtered)
        except (json.JSONDecodeError, TypeError, AttributeError):
            return cls()

    def update(self, **kwargs: Any) -> None:
        """Update config values and save."""
        for key, value in kwargs.items():
            if hasattr(self, key):
                setattr(self, key, value)
        self.save()

    def coerce(self, key: str, raw: str) -> Any:
        """Convert a command-line string to the type of field ``key``."""
        for f in fields(self):
            if f.name == key:
                current = getattr(self, key)
                if isinstance(current, int):
                    return int(raw, 0)
                if isinstance(current, float):
                    return float(raw)
                return raw
        raise KeyError(key)

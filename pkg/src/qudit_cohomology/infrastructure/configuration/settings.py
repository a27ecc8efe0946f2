"""Tolerances, size limits and sampling defaults for qcoh runs."""

import os
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional
from dataclasses import asdict, dataclass, field, fields

logger = logging.getLogger(__name__)

ENV_PREFIX = "QCOH_"
DEFAULT_CONFIG_PATH = "./config/app_config.json"


def _config_path(explicit: Optional[str]) -> Path:
    return Path(explicit or os.getenv("CONFIG_PATH", DEFAULT_CONFIG_PATH))


@dataclass
class AppSettings:
    """
    Every knob a qcoh run reads.

    Values come from the dataclass defaults, then ``config/app_config.json``
    (or ``$CONFIG_PATH``), then ``QCOH_<FIELD>`` environment variables.
    """

    # Numerical tolerances
    matrix_tolerance: float = field(default=1e-10)
    match_tolerance: float = field(default=1e-8)
    real_tolerance: float = field(default=1e-12)
    negativity_tolerance: float = field(default=1e-12)

    # Size limits
    max_dense_dimension: int = field(default=4096)
    max_phase_space_points: int = field(default=4096)
    max_system_entries: int = field(default=5_000_000)
    exhaustive_point_limit: int = field(default=256)
    cocycle_samples: int = field(default=20_000)
    oracle_max_dimension: int = field(default=1024)
    oracle_max_measurements: int = field(default=6)

    # Sampling
    default_shots: int = field(default=100_000)
    default_seed: int = field(default=0)
    shot_batch_size: int = field(default=10_000)
    chi_squared_alpha: float = field(default=1e-3)

    log_level: str = field(default="INFO")

    @classmethod
    def load_from_json(cls, config_path: Optional[str] = None) -> "AppSettings":
        """Defaults overlaid with the JSON file; an unreadable file counts as absent."""
        path = _config_path(config_path)
        if not path.exists():
            return cls()
        try:
            values = json.loads(path.read_text(encoding="utf-8"))
            return cls(**values)
        except (json.JSONDecodeError, TypeError) as e:
            logger.warning("Ignoring config file %s (%s)", path, e)
            return cls()

    @classmethod
    def env_overrides(cls) -> Dict[str, Any]:
        """Typed values of every QCOH_* variable that is set."""
        overrides: Dict[str, Any] = {}
        for entry in fields(cls):
            variable = ENV_PREFIX + entry.name.upper()
            raw = os.getenv(variable)
            if raw is None:
                continue
            kind = type(entry.default)
            try:
                # ints may be written as 1e3
                overrides[entry.name] = int(float(raw)) if kind is int else kind(raw)
            except ValueError:
                logger.warning("Ignoring %s=%r: expected %s", variable, raw, kind.__name__)
        return overrides

    @classmethod
    def load_from_env(cls) -> "AppSettings":
        return cls(**cls.env_overrides())

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "AppSettings":
        """File values first, then any QCOH_* variable on top."""
        settings = cls.load_from_json(config_path)
        for name, value in cls.env_overrides().items():
            setattr(settings, name, value)
        return settings

    def save_to_json(self, config_path: Optional[str] = None) -> None:
        """Write every field to the config file, creating parent folders."""
        path = _config_path(config_path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(asdict(self), indent=2), encoding="utf-8")
        except OSError as e:
            logger.error("Could not write %s: %s", path, e)
            return
        logger.info("Settings written to %s", path)


_settings: Optional[AppSettings] = None


def get_settings() -> AppSettings:
    """Process-wide settings, loaded on first use."""
    global _settings
    if _settings is None:
        _settings = AppSettings.load()
    return _settings


def reload_settings(config_path: Optional[str] = None) -> AppSettings:
    """Drop the cached settings and load them again."""
    global _settings
    _settings = AppSettings.load(config_path)
    return _settings

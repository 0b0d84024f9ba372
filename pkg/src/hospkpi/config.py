"""Tunable knobs for the engine and the operator-facing tools."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path


@dataclass(frozen=True)
class EngineConfig:
    reporting_tz: str = "UTC"
    fiscal_year_start_month: int = 1
    readmit_window_days: int = 30
    extended_stay_days: float = 10.0
    long_stay_days: float = 30.0
    cit_threshold_minutes: int = 540  # 9 hours
    deposit_lag_days: int = 1  # "same or next day"
    working_days: str = "calendar"  # calendar | weekdays
    currency: str = "USD"

    def __post_init__(self):
        if not 1 <= self.fiscal_year_start_month <= 12:
            raise ValueError("fiscal_year_start_month must be in [1,12]")
        if self.working_days not in ("calendar", "weekdays"):
            raise ValueError("working_days must be 'calendar' or 'weekdays'")


@dataclass(frozen=True)
class CliConfig:
    data_dir: Path
    registry_path: Path | None = None
    goals_path: Path | None = None
    rules_path: Path | None = None
    engine: EngineConfig = field(default_factory=EngineConfig)


_CONFIG_FILE = "config.json"

_ENGINE_KEYS = {
    "reporting_tz", "fiscal_year_start_month", "readmit_window_days",
    "extended_stay_days", "long_stay_days", "cit_threshold_minutes",
    "deposit_lag_days", "working_days", "currency",
}


def load_cli_config(data_dir: Path, overrides: dict | None = None) -> CliConfig:
    """Defaults, overridden by ``config.json`` in the data dir, then by flags."""
    values: dict = {}
    cfg_file = data_dir / _CONFIG_FILE
    if cfg_file.exists():
        values.update(json.loads(cfg_file.read_text()))
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})

    engine = EngineConfig(**{k: values[k] for k in _ENGINE_KEYS if k in values})

    def path_of(key: str) -> Path | None:
        raw = values.get(key)
        if raw is None:
            return None
        p = Path(raw)
        return p if p.is_absolute() else data_dir / p

    return CliConfig(
        data_dir=data_dir,
        registry_path=path_of("registry"),
        goals_path=path_of("goals"),
        rules_path=path_of("rules"),
        engine=engine,
    )


def with_engine(cfg: CliConfig, **kwargs) -> CliConfig:
    return replace(cfg, engine=replace(cfg.engine, **kwargs))

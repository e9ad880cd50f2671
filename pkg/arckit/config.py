# arckit/config.py
"""
Scan caps and output settings.

Values come from keyword arguments, then environment variables (a `.env`
file is honoured through python-dotenv), then the defaults below.
"""
import os
import logging
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Mapping, Optional

from dotenv import find_dotenv, load_dotenv

from arckit.errors import ConfigError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "json", "dot")

_ENV_KEYS = {
    "module_scan_cap": "ARCKIT_MODULE_CAP",
    "join_scan_cap": "ARCKIT_JOIN_CAP",
    "workers": "ARCKIT_WORKERS",
    "db_path": "ARCKIT_DB",
}


@dataclass(frozen=True)
class Config:
    module_scan_cap: int = 16
    join_scan_cap: int = 20
    chord_enum_cap: int = 8
    arc_enum_cap: int = 7
    output_format: str = "text"
    workers: int = 1
    db_path: Optional[str] = None

    def __post_init__(self):
        for name in ("module_scan_cap", "join_scan_cap", "chord_enum_cap", "arc_enum_cap", "workers"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be an integer >= 1, got {value!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "Config":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**dict(data))

    @classmethod
    def from_env(cls, load_dotenv_file: bool = True, **overrides) -> "Config":
        if load_dotenv_file:
            load_dotenv(find_dotenv(usecwd=True))
        values: Dict[str, Any] = {}
        for name, env in _ENV_KEYS.items():
            raw = os.getenv(env)
            if raw is None or not raw.strip():
                continue
            values[name] = raw.strip() if name == "db_path" else _parse_int(env, raw)
        enum_cap = os.getenv("ARCKIT_ENUM_CAP")
        if enum_cap is not None and enum_cap.strip():
            cap = _parse_int("ARCKIT_ENUM_CAP", enum_cap)
            values["chord_enum_cap"] = cap
            values["arc_enum_cap"] = cap
        values.update({k: v for k, v in overrides.items() if v is not None})
        config = cls.from_mapping(values)
        logger.debug("Config loaded: %s", config)
        return config

    def with_enum_cap(self, cap: Optional[int]) -> "Config":
        if cap is None:
            return self
        return replace(self, chord_enum_cap=cap, arc_enum_cap=cap)


def _parse_int(env: str, raw: str) -> int:
    try:
        return int(raw.strip())
    except ValueError:
        raise ConfigError(f"{env} must be an integer, got {raw!r}")


DEFAULT_CONFIG = Config()

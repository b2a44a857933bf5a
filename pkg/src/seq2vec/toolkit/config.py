"""Flat key = value configuration files.

Lines are `key = value`, `#` starts a comment, blank lines are ignored.
Keys are namespaced by consumer (synth.*, ae.*, clf.*); apply_config maps a
prefix onto a config dataclass, coercing values to the field types.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

from ..errors import ConfigError


def parse_config(text: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        values[key] = value.strip()
    return values


def load_config(path) -> dict[str, str]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    return parse_config(path.read_text(encoding="utf-8"))


def _coerce(raw: str, target_type, key: str):
    try:
        if target_type is bool:
            lowered = raw.lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if target_type is int:
            return int(raw)
        if target_type is float:
            return float(raw)
        if target_type is str:
            return raw
        if target_type == int | None or str(target_type) == "int | None":
            return None if raw.lower() in ("none", "") else int(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {exc}") from exc
    raise ConfigError(f"unsupported config field type for {key}: {target_type}")


def apply_config(cfg, values: dict[str, str], prefix: str):
    """Return a copy of dataclass cfg with `prefix.field` overrides applied."""
    if not dataclasses.is_dataclass(cfg):
        raise TypeError("cfg must be a dataclass instance")
    updates = {}
    known = {f.name: f.type for f in dataclasses.fields(cfg)}
    for key, raw in values.items():
        if not key.startswith(prefix + "."):
            continue
        name = key[len(prefix) + 1 :]
        if name not in known:
            raise ConfigError(f"unknown config key {key}")
        current = getattr(cfg, name)
        target_type = type(current) if current is not None else int | None
        updates[name] = _coerce(raw, target_type, key)
    return dataclasses.replace(cfg, **updates) if updates else cfg

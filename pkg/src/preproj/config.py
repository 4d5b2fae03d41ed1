"""Engine configuration: field moduli, seed, cache location, sampling knobs.

Flags override an optional flat key=value config file; the only
environment hook is PREPROJ_CACHE for the cache directory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import InputError
from .linalg import _is_prime


@dataclass(frozen=True)
class Config:
    field_char: int = 32003
    cross_check_char: int = 101
    seed: int = 0
    cache_dir: str = "cache"
    exhaustive_ext_sampling: bool = False
    a4_sample_count: int = 5
    jobs: int = 1

    def validate(self) -> "Config":
        for name in ("field_char", "cross_check_char"):
            p = getattr(self, name)
            if not _is_prime(p) or p == 2:
                raise InputError(f"{name} must be an odd prime, got {p}")
        if self.seed < 0 or self.a4_sample_count < 1 or self.jobs < 1:
            raise InputError("seed, a4_sample_count and jobs must be non-negative / positive")
        return self


_BOOL_WORDS = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def _coerce(name: str, raw: str):
    kind = {f.name: f.type for f in fields(Config)}[name]
    raw = raw.strip()
    if kind == "bool":
        if raw.lower() not in _BOOL_WORDS:
            raise InputError(f"bad boolean for {name}: {raw!r}")
        return _BOOL_WORDS[raw.lower()]
    if kind == "int":
        return int(raw)
    return raw


def load_config_file(path: str) -> dict:
    """Parse a flat `key = value` file; '#' starts a comment."""
    out = {}
    known = {f.name for f in fields(Config)}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected key = value")
            key, raw = (s.strip() for s in line.split("=", 1))
            if key not in known:
                raise InputError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _coerce(key, raw)
    return out


def build_config(file_path: str | None = None, overrides: dict | None = None) -> Config:
    values: dict = {}
    if file_path:
        values.update(load_config_file(file_path))
    cache_env = os.environ.get("PREPROJ_CACHE")
    if cache_env:
        values["cache_dir"] = cache_env
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return replace(Config(), **values).validate()

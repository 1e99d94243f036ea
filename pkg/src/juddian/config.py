"""Run configuration: defaults, optional key=value file, command-line overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from .constraint_poly import DEFAULT_EXACT_CAP
from .gfunction import DEFAULT_POLE_GUARD
from .search import DEFAULT_GRID, DEFAULT_TOL
from .tridiag import DEFAULT_REL_TOL


@dataclass(frozen=True)
class RunConfig:
    bisect_tol: float = DEFAULT_REL_TOL
    residual_tol: float = DEFAULT_TOL
    pole_guard: float = DEFAULT_POLE_GUARD
    exact_cap: int = DEFAULT_EXACT_CAP
    scan_grid: int = DEFAULT_GRID
    format: str = "csv"
    output: Optional[str] = None
    threads: Optional[int] = None

    def __post_init__(self):
        for name in ("bisect_tol", "residual_tol", "pole_guard"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.exact_cap < 1:
            raise ValueError("exact_cap must be >= 1")
        if self.scan_grid < 1:
            raise ValueError("scan_grid must be >= 1")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be 'csv' or 'json'")
        if self.threads is not None and self.threads < 1:
            raise ValueError("threads must be >= 1")

    def thread_count(self) -> int:
        return self.threads or os.cpu_count() or 1


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    kind = _TYPES[key]
    if kind == "float":
        return float(raw)
    if kind == "int":
        return int(raw)
    if kind == "Optional[int]":
        return None if raw.lower() in ("", "none") else int(raw)
    if kind == "Optional[str]":
        return None if raw.lower() in ("", "none", "-") else raw
    return raw


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _TYPES:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, raw)
    return out


def load_config(path: Optional[str] = None, **overrides) -> RunConfig:
    """Defaults <- file <- overrides (``None`` overrides are ignored)."""
    cfg = RunConfig()
    if path:
        with open(path) as fh:
            cfg = replace(cfg, **parse_config_text(fh.read()))
    given = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **given) if given else cfg

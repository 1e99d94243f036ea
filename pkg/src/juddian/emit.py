"""Deterministic CSV / JSON-lines emission."""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence, TextIO


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_rows(out: TextIO, header: Sequence[str], rows: Iterable[Mapping], fmt_name: str = "csv") -> None:
    if fmt_name == "csv":
        out.write(",".join(header) + "\n")
        for r in rows:
            out.write(",".join(fmt(r[h]) for h in header) + "\n")
    elif fmt_name == "json":
        for r in rows:
            out.write(json.dumps({h: r[h] for h in header}) + "\n")
    else:
        raise ValueError(f"unknown output format {fmt_name!r}")

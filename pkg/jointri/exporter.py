"""
Output Exporter
===============
Deterministic JSON and CSV rendering of command results.

Floats are rounded to a fixed number of significant digits, complex
numbers become [re, im] pairs, keys are sorted and line endings are "\n",
so identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable

import numpy as np


SIGNIFICANT_DIGITS = 12

# 'gamma' is the power split on two-band sweeps and the covariance id elsewhere.
CSV_COLUMNS = ("gamma", "sdr1_db", "sdr2_db", "scheme")


def round_sig(x: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    if not math.isfinite(x) or x == 0.0:
        return x
    rounded = float(f"{x:.{digits}g}")
    return 0.0 if rounded == 0.0 else rounded


def to_jsonable(obj: Any, digits: int = SIGNIFICANT_DIGITS) -> Any:
    """Plain JSON values with rounded floats; NaN and Inf become strings."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return round_sig(x, digits) if math.isfinite(x) else str(x)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(float(obj.real), digits), to_jsonable(float(obj.imag), digits)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj) and np.all(np.imag(obj) == 0):
            obj = np.real(obj)
        return [to_jsonable(v, digits) for v in obj.tolist()] if obj.ndim else to_jsonable(
            obj.item(), digits
        )
    if isinstance(obj, Path):
        return str(obj)
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict(), digits)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name), digits) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    raise TypeError(f"Cannot serialise {type(obj).__name__}.")


def render_json(payload: Any, digits: int = SIGNIFICANT_DIGITS) -> str:
    return json.dumps(to_jsonable(payload, digits), indent=2, sort_keys=True) + "\n"


def render_csv(
    rows: Iterable[dict[str, Any]],
    columns: Iterable[str] = CSV_COLUMNS,
    digits: int = SIGNIFICANT_DIGITS,
) -> str:
    columns = list(columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = []
        for col in columns:
            value = to_jsonable(row.get(col), digits)
            cells.append("" if value is None else value)
        writer.writerow(cells)
    return buf.getvalue()


def write_output(text: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    return path

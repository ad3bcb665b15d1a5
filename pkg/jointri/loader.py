"""
Loader
=======
Input gate for matrix files and two-band scenario files.

Matrix text format:

    # optional comment lines
    rows cols
    re im
    re im
    ...

rows * cols "re im" pairs in row-major order. Tokens may be split across
lines freely; '#' starts a comment anywhere on a line.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import jsonschema
import numpy as np
import yaml

from jointri.errors import MatrixParseError
from jointri.jscc import TwoBandChannel


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

ROOT_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT_DIR / "data"
MATRICES_DIR = DATA_DIR / "matrices"
SCENARIOS_DIR = DATA_DIR / "scenarios"


SCENARIO_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["scenario"],
    "properties": {
        "scenario": {
            "type": "object",
            "required": ["alpha1", "beta1", "alpha2", "beta2", "power"],
            "additionalProperties": False,
            "properties": {
                "name": {"type": "string"},
                "description": {"type": "string"},
                "alpha1": {"type": "number"},
                "beta1": {"type": "number"},
                "alpha2": {"type": "number"},
                "beta2": {"type": "number"},
                "power": {"type": "number", "minimum": 0},
                "gamma_points": {"type": "integer", "minimum": 2},
            },
        },
    },
}


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def parse_matrix(text: str, source: str = "<text>") -> np.ndarray:
    tokens: list[str] = []
    for line in text.splitlines():
        tokens.extend(line.split("#", 1)[0].split())
    if len(tokens) < 2:
        raise MatrixParseError(f"{source}: missing 'rows cols' header.")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError as exc:
        raise MatrixParseError(f"{source}: header must be two integers, got {tokens[:2]}.") from exc
    if rows <= 0 or cols <= 0:
        raise MatrixParseError(f"{source}: dimensions must be positive, got {rows}x{cols}.")
    body = tokens[2:]
    expected = 2 * rows * cols
    if len(body) != expected:
        raise MatrixParseError(
            f"{source}: expected {expected} numbers for a {rows}x{cols} matrix, got {len(body)}."
        )
    try:
        values = np.array([float(tok) for tok in body], dtype=float)
    except ValueError as exc:
        raise MatrixParseError(f"{source}: non-numeric entry ({exc}).") from exc
    if not np.all(np.isfinite(values)):
        raise MatrixParseError(f"{source}: entries must be finite.")
    pairs = values.reshape(rows * cols, 2)
    return (pairs[:, 0] + 1j * pairs[:, 1]).reshape(rows, cols)


def load_matrix(path: str | Path) -> np.ndarray:
    path = Path(path)
    if not path.exists():
        raise MatrixParseError(f"Matrix file not found: {path}")
    return parse_matrix(path.read_text(encoding="utf-8"), source=str(path))


def dump_matrix(a) -> str:
    """Inverse of parse_matrix; full float precision via repr."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise MatrixParseError(f"Only 2-D matrices can be written, got {a.ndim}-D.")
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for z in a.reshape(-1):
        lines.append(f"{float(z.real)!r} {float(z.imag)!r}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Scenarios
# ---------------------------------------------------------------------------

def load_scenario(path: str | Path) -> dict[str, Any]:
    """Load and validate a two-band scenario; returns the 'scenario' mapping."""
    path = Path(path)
    if not path.exists():
        raise MatrixParseError(f"Scenario file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f)
    except yaml.YAMLError as exc:
        raise MatrixParseError(f"{path}: invalid YAML ({exc}).") from exc
    try:
        jsonschema.validate(instance=raw, schema=SCENARIO_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise MatrixParseError(f"{path}: {exc.message}") from exc
    return raw["scenario"]


def scenario_channel(scenario: dict[str, Any]) -> TwoBandChannel:
    try:
        return TwoBandChannel(
            alpha1=scenario["alpha1"],
            beta1=scenario["beta1"],
            alpha2=scenario["alpha2"],
            beta2=scenario["beta2"],
            power=float(scenario["power"]),
        )
    except ValueError as exc:
        raise MatrixParseError(f"Scenario {scenario.get('name', '')!r}: {exc}") from exc


def list_scenarios() -> list[Path]:
    if not SCENARIOS_DIR.exists():
        return []
    return sorted(SCENARIOS_DIR.glob("*.yaml"))

"""
Tolerance Policy
=================
Loads the numeric policy that governs invariant checks and solver budgets.

The policy layer separates what the library computes from how strictly the
front end enforces it:

  Library layer   -> factorizations, rates, SDR curves
  Policy layer    -> tolerances, iteration budgets, output precision
  Enforcement     -> CheckReport findings and the CLI exit status

The YAML file is validated against a JSON Schema on load.
"""

from __future__ import annotations

import copy
from pathlib import Path
from typing import Any, Mapping

import jsonschema
import yaml

from jointri.errors import ConfigError
from jointri.multicast import OptimizerOptions


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

PROFILE_PATH = Path(__file__).resolve().parent / "tolerances.yaml"

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_COUNT = {"type": "integer", "minimum": 1}

PROFILE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["profile_version", "tolerances"],
    "additionalProperties": False,
    "properties": {
        "profile_version": {"type": "string"},
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "required": [
                "reconstruction", "unitarity", "ratio", "majorization",
                "proposition", "rank", "mixed_boundary", "feasibility",
            ],
            "properties": {
                key: _POSITIVE
                for key in (
                    "reconstruction", "unitarity", "ratio", "majorization",
                    "proposition", "rank", "mixed_boundary", "feasibility",
                )
            },
        },
        "optimizer": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "iterations": _COUNT,
                "patience": _COUNT,
                "grid_points": {"type": "integer", "minimum": 2},
                "active_tolerance": _POSITIVE,
            },
        },
        "simulation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"batch_size": _COUNT, "symbols": _COUNT},
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "significant_digits": {"type": "integer", "minimum": 1, "maximum": 17},
                "gamma_points": {"type": "integer", "minimum": 2},
            },
        },
        "audit": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"audit_every_run": {"type": "boolean"}},
        },
    },
}

# CLI-facing override keys -> (section, key)
OVERRIDE_KEYS: dict[str, tuple[str, str]] = {
    "recon": ("tolerances", "reconstruction"),
    "unitarity": ("tolerances", "unitarity"),
    "ratio": ("tolerances", "ratio"),
    "majorization": ("tolerances", "majorization"),
    "proposition": ("tolerances", "proposition"),
    "rank": ("tolerances", "rank"),
    "mixed_boundary": ("tolerances", "mixed_boundary"),
    "feasibility": ("tolerances", "feasibility"),
    "iterations": ("optimizer", "iterations"),
    "gamma_points": ("output", "gamma_points"),
    "batch_size": ("simulation", "batch_size"),
    "symbols": ("simulation", "symbols"),
}

_DEFAULTS: dict[str, dict[str, Any]] = {
    "optimizer": {"iterations": 2000, "patience": 200, "grid_points": 201,
                  "active_tolerance": 1e-9},
    "simulation": {"batch_size": 100_000, "symbols": 100_000},
    "output": {"significant_digits": 12, "gamma_points": 201},
    "audit": {"audit_every_run": False},
}


# ---------------------------------------------------------------------------
# Tolerance Profile
# ---------------------------------------------------------------------------

class ToleranceProfile:
    """Validated numeric policy with typed accessors."""

    def __init__(self, data: Mapping[str, Any], source: Path | None = None) -> None:
        try:
            jsonschema.validate(instance=dict(data), schema=PROFILE_SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ConfigError(f"Invalid tolerance profile at {where}: {exc.message}") from exc
        merged = copy.deepcopy(dict(data))
        for section, defaults in _DEFAULTS.items():
            merged[section] = {**defaults, **merged.get(section, {})}
        self._data = merged
        self._source = source

    @classmethod
    def load(cls, path: str | Path | None = None) -> ToleranceProfile:
        path = Path(path) if path is not None else PROFILE_PATH
        if not path.exists():
            raise ConfigError(f"Tolerance profile not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as exc:
            raise ConfigError(f"Tolerance profile is not valid YAML: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"Tolerance profile must be a mapping: {path}")
        return cls(data, source=path)

    def with_overrides(self, overrides: Mapping[str, Any] | None) -> ToleranceProfile:
        """Copy with individual values replaced; unknown keys raise ConfigError."""
        if not overrides:
            return self
        data = copy.deepcopy(self._data)
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in OVERRIDE_KEYS:
                raise ConfigError(
                    f"Unknown tolerance override '{key}'. "
                    f"Known: {', '.join(sorted(OVERRIDE_KEYS))}"
                )
            section, name = OVERRIDE_KEYS[key]
            data[section][name] = value
        return ToleranceProfile(data, source=self._source)

    # --- Core accessors ---

    @property
    def version(self) -> str:
        return self._data["profile_version"]

    @property
    def source(self) -> Path | None:
        return self._source

    def tolerance(self, name: str) -> float:
        try:
            return float(self._data["tolerances"][name])
        except KeyError as exc:
            raise ConfigError(f"Unknown tolerance '{name}'.") from exc

    @property
    def reconstruction(self) -> float:
        return self.tolerance("reconstruction")

    @property
    def unitarity(self) -> float:
        return self.tolerance("unitarity")

    @property
    def ratio(self) -> float:
        return self.tolerance("ratio")

    @property
    def majorization(self) -> float:
        return self.tolerance("majorization")

    @property
    def proposition(self) -> float:
        return self.tolerance("proposition")

    @property
    def rank(self) -> float:
        return self.tolerance("rank")

    @property
    def mixed_boundary(self) -> float:
        return self.tolerance("mixed_boundary")

    @property
    def feasibility(self) -> float:
        return self.tolerance("feasibility")

    # --- Section accessors ---

    @property
    def optimizer(self) -> OptimizerOptions:
        return OptimizerOptions(**self._data["optimizer"])

    @property
    def batch_size(self) -> int:
        return int(self._data["simulation"]["batch_size"])

    @property
    def symbols(self) -> int:
        return int(self._data["simulation"]["symbols"])

    @property
    def significant_digits(self) -> int:
        return int(self._data["output"]["significant_digits"])

    @property
    def gamma_points(self) -> int:
        return int(self._data["output"]["gamma_points"])

    def should_audit(self) -> bool:
        return bool(self._data["audit"]["audit_every_run"])

    # --- Summary ---

    def snapshot(self) -> dict[str, Any]:
        return copy.deepcopy(self._data)

    def summary(self) -> str:
        """Human-readable profile summary."""
        lines = [
            f"Profile Version: {self.version}",
            f"Source:          {self._source or '<in-memory>'}",
            "",
            "Tolerances:",
        ]
        for key, value in self._data["tolerances"].items():
            lines.append(f"  {key:<16} {value:.1e}")
        opt = self._data["optimizer"]
        lines += [
            "",
            f"Optimizer:       {opt['iterations']} iterations, patience {opt['patience']}, "
            f"{opt['grid_points']} grid points",
            f"Simulation:      batch {self.batch_size}, {self.symbols} symbols",
            f"Output:          {self.significant_digits} significant digits, "
            f"{self.gamma_points} gamma points",
            f"Audit every run: {'yes' if self.should_audit() else 'no'}",
        ]
        return "\n".join(lines)

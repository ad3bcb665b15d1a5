"""
Invariant Findings
===================
Post-condition checks are collected as findings instead of being asserted,
so a caller can see every residual at once and decide what blocks.

  ERROR   -- a residual exceeded its limit; the result must not be trusted.
  WARNING -- borderline input was projected onto the feasible boundary.
  INFO    -- a residual that passed, kept for the record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from jointri._icons import ICON_FAIL, ICON_PASS, SEVERITY_ICONS


class Severity(str, Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"
    INFO = "INFO"


@dataclass
class Finding:
    severity: Severity
    code: str
    message: str
    value: float | None = None
    limit: float | None = None

    @property
    def icon(self) -> str:
        return SEVERITY_ICONS.get(self.severity.value, "[?]")

    def __str__(self) -> str:
        if self.value is None:
            return f"{self.icon} {self.code}: {self.message}"
        return f"{self.icon} {self.code}: {self.message} ({self.value:.3e} / {self.limit:.1e})"

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
        }
        if self.value is not None:
            d["value"] = self.value
            d["limit"] = self.limit
        return d


@dataclass
class CheckReport:
    subject: str
    findings: list[Finding] = field(default_factory=list)

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == Severity.ERROR]

    @property
    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == Severity.WARNING]

    @property
    def passed(self) -> bool:
        return not self.errors

    @property
    def max_violation(self) -> float:
        """Largest value/limit ratio across measured findings (<= 1 passes)."""
        ratios = [
            f.value / f.limit for f in self.findings
            if f.value is not None and f.limit
        ]
        return max(ratios, default=0.0)

    def require(self, code: str, value: float, limit: float, message: str) -> None:
        """Record ``value`` against ``limit``; exceeding it is an ERROR."""
        value = float(value)
        severity = Severity.ERROR if not value <= limit else Severity.INFO
        self.findings.append(Finding(severity, code, message, value, float(limit)))

    def warn(self, code: str, message: str) -> None:
        self.findings.append(Finding(Severity.WARNING, code, message))

    def extend(self, other: CheckReport) -> None:
        self.findings.extend(other.findings)

    def summary(self) -> str:
        status = f"{ICON_PASS} PASSED" if self.passed else f"{ICON_FAIL} FAILED"
        lines = [
            f"=== INVARIANT CHECKS: {self.subject} ===",
            f"{status} | Errors: {len(self.errors)} | Warnings: {len(self.warnings)}"
            f" | Max violation: {self.max_violation:.3f}",
            "",
        ]
        lines.extend(str(f) for f in self.findings)
        return "\n".join(lines)

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "max_violation": self.max_violation,
            "findings": [f.to_dict() for f in self.findings],
        }

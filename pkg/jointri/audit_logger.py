"""
Audit Logger
=============
One JSON record per CLI run, sealed with a SHA-256 over its own body.

A record names the command and options, hashes every input file, embeds
the tolerance profile that was applied, the seed, the invariant findings
and the exit status, and notes the git revision when one is available.
With the input files it is enough to rerun the command and diff the output.
"""

from __future__ import annotations

import hashlib
import json
import subprocess
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from jointri.loader import ROOT_DIR

LOGS_DIR = ROOT_DIR / "logs"
AUDIT_VERSION = "1.0"


def _canonical(body: dict[str, Any]) -> bytes:
    return json.dumps(body, sort_keys=True, default=str).encode("utf-8")


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class AuditLogger:
    """Appends sealed run records to a directory."""

    def __init__(self, logs_dir: Path | None = None) -> None:
        self._logs_dir = Path(logs_dir) if logs_dir is not None else LOGS_DIR
        self._logs_dir.mkdir(parents=True, exist_ok=True)

    @property
    def logs_dir(self) -> Path:
        return self._logs_dir

    def log_run(
        self,
        *,
        operation: str,
        input_files: list[str | Path] | None = None,
        options: dict[str, Any] | None = None,
        profile_snapshot: dict[str, Any] | None = None,
        seed: int | None = None,
        checks: dict[str, Any] | None = None,
        exit_code: int = 0,
        output_file: str | None = None,
        error: str | None = None,
    ) -> Path:
        """Write one record and return its path. Empty optional fields are omitted."""
        stamp = datetime.now(timezone.utc)
        optional = {
            "input_hashes": (
                {str(p): self.hash_file(p) for p in input_files} if input_files else None
            ),
            "options": options,
            "profile_applied": profile_snapshot,
            "seed": seed,
            "checks": checks,
            "output_file": output_file or None,
            "error": error or None,
        }
        record: dict[str, Any] = {
            "audit_version": AUDIT_VERSION,
            "timestamp_utc": stamp.isoformat(),
            "operation": operation,
            "git_commit": self._git_commit(),
            "exit_code": exit_code,
            **{k: v for k, v in optional.items() if v is not None},
        }
        record["record_hash"] = self.record_hash(record)

        slug = "".join(ch if ch.isalnum() else "_" for ch in operation.lower())
        path = self._logs_dir / f"{stamp:%Y-%m-%dT%H-%M-%S-%f}_{slug}.json"
        path.write_text(
            json.dumps(record, indent=2, default=str, ensure_ascii=False), encoding="utf-8"
        )
        return path

    @staticmethod
    def record_hash(record: dict[str, Any]) -> str:
        return _sha256(_canonical({k: v for k, v in record.items() if k != "record_hash"}))

    @staticmethod
    def verify(path: str | Path) -> bool:
        record = json.loads(Path(path).read_text(encoding="utf-8"))
        return record.get("record_hash") == AuditLogger.record_hash(record)

    @staticmethod
    def hash_file(path: str | Path) -> str | None:
        path = Path(path)
        return _sha256(path.read_bytes()) if path.is_file() else None

    @staticmethod
    def _git_commit() -> str | None:
        try:
            proc = subprocess.run(
                ["git", "rev-parse", "--short", "HEAD"],
                capture_output=True, text=True, timeout=5, cwd=str(ROOT_DIR),
            )
        except (OSError, subprocess.SubprocessError):
            return None
        return proc.stdout.strip() if proc.returncode == 0 else None

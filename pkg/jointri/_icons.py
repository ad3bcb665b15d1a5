"""
Status icons
=============
Check marks for the status panels. The panels go to stderr, so the stream
checked is stderr; legacy code pages get ASCII stand-ins.
"""

from __future__ import annotations

import os
import sys
from typing import TextIO

_UTF_NAMES = ("utf8", "utf16", "utf32")


def supports_unicode(stream: TextIO | None = None) -> bool:
    if os.environ.get("PYTHONIOENCODING", "").lower().startswith("utf"):
        return True
    stream = stream if stream is not None else sys.stderr
    name = (getattr(stream, "encoding", None) or "").lower().replace("-", "").replace("_", "")
    return name in _UTF_NAMES


_FANCY = supports_unicode()

ICON_PASS = "✓" if _FANCY else "[v]"
ICON_FAIL = "✗" if _FANCY else "[x]"
ICON_WARN = "⚠" if _FANCY else "[!]"
ICON_INFO = "ℹ" if _FANCY else "[i]"

SEVERITY_ICONS: dict[str, str] = {
    "ERROR": ICON_FAIL,
    "WARNING": ICON_WARN,
    "INFO": ICON_INFO,
}

"""Structured verdicts shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of one check.

    ``witnesses`` holds the least counterexamples found (ids, not indices);
    ``details`` carries check-specific data and must be JSON-serializable.
    """

    check: str
    ok: bool
    checked: int = 0
    witnesses: list[Any] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "ok": self.ok,
            "checked": self.checked,
            "witnesses": _plain(self.witnesses),
            "details": _plain(self.details),
        }

    def summary(self) -> str:
        verdict = "pass" if self.ok else "fail"
        line = f"{self.check}: {verdict} ({self.checked} checked)"
        if self.witnesses:
            line += f"; witnesses: {_plain(self.witnesses)}"
        return line


def _plain(value):
    if isinstance(value, Report):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    return value

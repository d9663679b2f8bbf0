from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Report:
    """Outcome of one verification check."""

    name: str
    passed: bool
    detail: str = ""
    max_error: float | None = None
    tolerance: float | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")

    def __bool__(self) -> bool:
        return self.passed

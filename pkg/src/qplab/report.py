"""Structured pass/fail records shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    difference: str = "0"
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "difference": self.difference,
            "warnings": list(self.warnings),
        }

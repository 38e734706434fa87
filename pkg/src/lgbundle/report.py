"""Verification reports shared by the verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    pairs_checked: int = 0
    mismatches: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "mismatches": self.mismatches,
            "details": self.details,
        }

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.name}: {self.pairs_checked} checked, {len(self.mismatches)} mismatches"

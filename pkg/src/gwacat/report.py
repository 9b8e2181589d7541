"""Structured check reports shared by the verification drivers and the CLI.

Each check records the identity it verifies (``anchor``), a pass/fail flag,
and optional detail; a report is an ordered list of checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    anchor: str  # the identity or property being verified, as text
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "anchor": self.anchor, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, anchor: str, passed: bool, detail: str = "") -> CheckResult:
        result = CheckResult(name, anchor, bool(passed), detail)
        self.checks.append(result)
        return result

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def summary_lines(self) -> list:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            extra = f" -- {c.detail}" if c.detail and not c.passed else ""
            lines.append(f"  [{mark}] {c.name}: {c.anchor}{extra}")
        return lines

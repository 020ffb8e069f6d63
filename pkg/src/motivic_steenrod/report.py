"""Verification reports shared by all suites."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, **witness) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append({k: _plain(v) for k, v in witness.items()})
        return ok

    def merge(self, other: "Report") -> "Report":
        self.checks += other.checks
        self.failures.extend({"suite": other.name, **f} for f in other.failures)
        self.notes.extend(other.notes)
        self.seconds += other.seconds
        return self

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {status} ({self.checks} checks, {len(self.failures)} failures, {self.seconds:.2f}s)"
        if self.failures:
            line += f"\n  first witness: {self.failures[0]}"
        for n in self.notes:
            line += f"\n  note: {n}"
        return line

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "notes": self.notes,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _plain(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return str(v)


class timed:
    """Context manager that stores elapsed seconds on a report."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.seconds += time.perf_counter() - self._t0
        return False

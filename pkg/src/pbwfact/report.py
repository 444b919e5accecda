"""Verification reports shared by every suite."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    suite: str
    parameters: dict[str, Any] = field(default_factory=dict)
    checks_run: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    # suite-specific summary fields, merged into the JSON form
    extra: dict[str, Any] = field(default_factory=dict)
    # in-memory results (tensors, polynomials); never serialized
    artifacts: dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def status(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def ok(self) -> bool:
        return not self.violations

    def violation(self, location: Any, expected: Any, actual: Any) -> None:
        self.violations.append({"location": location, "expected": expected, "actual": actual})

    def merge(self, other: "Report", prefix: str | None = None) -> None:
        self.checks_run += other.checks_run
        for v in other.violations:
            v = dict(v)
            if prefix:
                v["location"] = f"{prefix}: {v['location']}"
            self.violations.append(v)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "parameters": self.parameters,
            "checks_run": self.checks_run,
            "status": self.status,
            "violations": self.violations,
        }
        out.update(self.extra)
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def summary(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        lines = [f"{self.suite} [{params}]: {self.status.upper()} ({self.checks_run} checks)"]
        for k, v in self.extra.items():
            if not isinstance(v, (list, dict)):
                lines.append(f"  {k}: {v}")
        for v in self.violations[:20]:
            lines.append(f"  violation at {v['location']}: expected {v['expected']}, got {v['actual']}")
        if len(self.violations) > 20:
            lines.append(f"  ... {len(self.violations) - 20} more")
        return "\n".join(lines)

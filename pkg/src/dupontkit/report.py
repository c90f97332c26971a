"""Check results and the report schema shared by every verification suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    kind: str  # "theorem" or "claim"
    status: str  # "pass" or "fail"
    counterexample: dict[str, str] | None = None
    note: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "kind": self.kind, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = dict(self.counterexample)
        if self.note is not None:
            out["note"] = self.note
        return out


def make_check(name, ok, kind="theorem", counterexample=None, note=None) -> Check:
    return Check(name, kind, "pass" if ok else "fail", None if ok else counterexample, note)


@dataclass
class Report:
    suite: str
    params: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: int | None = None

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks, prefix: str = "") -> None:
        for c in checks:
            self.checks.append(Check(prefix + c.name, c.kind, c.status, c.counterexample, c.note))

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __iter__(self):
        return iter(self.checks)

    @property
    def passed(self) -> bool:
        """True iff every theorem-backed check passed; claims never gate."""
        return all(c.passed for c in self.checks if c.kind == "theorem")

    @property
    def claims_failed(self) -> list[str]:
        return sorted(c.name for c in self.checks if c.kind == "claim" and not c.passed)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)],
            "claims_failed": self.claims_failed,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        if self.params:
            lines.append("params: " + ", ".join(f"{k}={v}" for k, v in sorted(self.params.items())))
        for c in sorted(self.checks, key=lambda c: c.name):
            lines.append(f"  [{c.status.upper():4}] ({c.kind}) {c.name}")
            if c.note:
                lines.append(f"         note: {c.note}")
            if c.counterexample:
                for key in ("input", "lhs", "rhs"):
                    if key in c.counterexample:
                        lines.append(f"         {key}: {c.counterexample[key]}")
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"result: {verdict}" + (f" (claims failed: {', '.join(self.claims_failed)})" if self.claims_failed else ""))
        if self.elapsed_ms is not None:
            lines.append(f"elapsed_ms: {self.elapsed_ms}")
        return "\n".join(lines) + "\n"

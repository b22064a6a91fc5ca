"""Structured pass/fail records for identity checks."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class VerificationReport:
    identity_id: str
    parameters: dict[str, Any] = field(default_factory=dict)
    status: Literal["pass", "fail"] = "pass"
    counterexample: dict[str, Any] | None = None
    elapsed: float = 0.0  # seconds
    checked: int = 0  # number of individual equalities compared
    note: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, **counterexample: Any) -> None:
        """Record a failure; only the earliest counterexample is kept."""
        if self.status == "pass":
            self.status = "fail"
            self.counterexample = counterexample

    def expect(self, lhs: Any, rhs: Any, **where: Any) -> bool:
        self.checked += 1
        if lhs != rhs:
            self.fail(lhs=lhs, rhs=rhs, **where)
            return False
        return True

    def merge(self, other: VerificationReport) -> VerificationReport:
        """Conjunction of two reports over the same identity."""
        out = VerificationReport(self.identity_id, {**self.parameters, **other.parameters},
                                 elapsed=self.elapsed + other.elapsed,
                                 checked=self.checked + other.checked,
                                 note=self.note or other.note)
        for r in (self, other):
            if not r.passed:
                out.fail(**r.counterexample)
                break
        return out

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "identity": self.identity_id,
            "n": self.parameters.get("n"),
            "status": self.status,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }
        if self.counterexample is not None:
            out["counterexample"] = _jsonable(self.counterexample)
        extra = {k: v for k, v in self.parameters.items() if k != "n"}
        if extra:
            out["parameters"] = _jsonable(extra)
        out["checked"] = self.checked
        if self.note:
            out["note"] = self.note
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@contextmanager
def timed(report: VerificationReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed += time.perf_counter() - start

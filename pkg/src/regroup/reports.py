"""Uniform pass/fail records produced by every window check."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"


def jsonable(obj):
    """Recursively turn Fractions (and containers of them) into JSON-ready values."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


@dataclass
class CheckReport:
    name: str
    status: str = PASS
    checked: int = 0
    counterexample: Optional[dict] = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def fail(self, **where) -> "CheckReport":
        # keep the first counterexample only
        if self.status == PASS:
            self.status = FAIL
            self.counterexample = where
        return self

    def to_json(self) -> dict[str, Any]:
        out = {"check": self.name, "status": self.status, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = jsonable(self.counterexample)
        if self.details:
            out["details"] = jsonable(self.details)
        return out

    def __bool__(self):
        return self.ok


def merge(name: str, reports, **details) -> CheckReport:
    """Combine sub-reports in order; the first failure wins."""
    out = CheckReport(name, details=dict(details))
    subs = []
    for r in reports:
        out.checked += r.checked
        subs.append(r.to_json())
        if not r.ok and out.ok:
            out.status = r.status
            out.counterexample = dict(r.counterexample or {}, check=r.name)
    out.details["parts"] = subs
    return out

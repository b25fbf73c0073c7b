"""Verification records and their canonical JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"


@dataclass
class VerificationReport:
    suite: str
    params: dict[str, Any]
    status: str
    witness: dict[str, Any] | None = None
    millis: int = 0
    checks: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"status must be {PASS!r} or {FAIL!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict[str, Any]:
        out = {"suite": self.suite, "params": canonical(self.params), "status": self.status, "millis": self.millis}
        if self.witness is not None:
            out["witness"] = canonical(self.witness)
        return out


def canonical(value: Any) -> Any:
    """Rationals become "num/den" strings, integer keys become decimal strings."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(canonical(v) for v in value)
    return value


def dumps(obj: Any) -> str:
    return json.dumps(canonical(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=True)

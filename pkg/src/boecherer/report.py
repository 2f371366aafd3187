"""Verification report record and its JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class VerificationReport:
    check: str
    lhs: str
    rhs: str
    rel_err: float
    tolerance: float
    passed: bool
    params: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "rel_err": float(self.rel_err),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
            "params": _jsonable(self.params),
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check} rel_err={self.rel_err:.3e} tol={self.tolerance:g} {self.params}"


def exact_report(check: str, lhs, rhs, params=None) -> VerificationReport:
    """Report for an exact identity: rel_err is 0 when the sides agree, else 1."""
    ok = lhs == rhs
    if hasattr(lhs, "simplify"):
        lhs = lhs.simplify()
    return VerificationReport(check, str(lhs), str(rhs), 0.0 if ok else 1.0, 0.0, bool(ok),
                              dict(params or {}))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def dump_reports(reports: List[VerificationReport], path) -> None:
    with open(path, "w") as fh:
        json.dump([r.to_json() for r in reports], fh, indent=2)

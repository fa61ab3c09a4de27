"""Shared report record for identity verification."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["IdentityReport", "make_report"]


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one named identity check at one parameter point."""

    identity_name: str
    lhs: float
    rhs: float
    abs_diff: float
    rel_diff: float
    tolerance: float
    passed: bool
    diagnostics: str = ""

    def as_dict(self):
        return {
            "identity": self.identity_name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "diagnostics": self.diagnostics,
        }


def make_report(name: str, lhs: float, rhs: float, tolerance: float,
                diagnostics: str = "") -> IdentityReport:
    """Build a report; passes when abs_diff <= tol or rel_diff <= tol."""
    lhs = float(lhs)
    rhs = float(rhs)
    abs_diff = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_diff = abs_diff / scale if scale > 0 else 0.0
    passed = bool((abs_diff <= tolerance) or (rel_diff <= tolerance))
    if not np.isfinite(abs_diff):
        passed = False
    return IdentityReport(name, lhs, rhs, abs_diff, rel_diff, float(tolerance),
                          passed, diagnostics)

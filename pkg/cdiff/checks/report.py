# -*- coding: utf-8 -*-

"""CheckReport: one verdict on one diagram for one function."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from cdiff.checks.common import Grid

WORST_SAMPLES = 5


@dataclass(frozen=True)
class CheckReport:
    check: str
    fn: str
    p: float | None
    q: float | None
    convention: dict[str, Any]
    grid: Grid
    max_abs_error: float
    tol: float
    worst: tuple[tuple[float, float, float], ...] = ()
    # Exact comparison of σ components (commute only).
    sigma_equal: bool | None = None
    # Measured, never part of the verdict.
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "PASS" if self.max_abs_error <= self.tol else "FAIL"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_payload(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "check": self.check,
            "fn": self.fn,
            "p": self.p,
            "q": self.q,
            "convention": dict(self.convention),
            "grid": self.grid.to_payload(),
            "max_abs_error": self.max_abs_error,
            "tol": self.tol,
            "verdict": self.verdict,
            "worst": [list(row) for row in self.worst],
        }
        if self.sigma_equal is not None:
            payload["sigma_equal"] = self.sigma_equal
        if self.info:
            payload["info"] = dict(self.info)
        return payload


def compare(
    check: str,
    fn: str,
    xs: np.ndarray,
    lhs: np.ndarray,
    rhs: np.ndarray,
    *,
    tol: float,
    grid: Grid,
    convention: dict[str, Any],
    p: float | None = None,
    q: float | None = None,
    sigma_equal: bool | None = None,
    info: dict[str, Any] | None = None,
) -> CheckReport:
    """Pointwise |lhs - rhs| over xs; NaN anywhere counts as an infinite error."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    err = np.abs(lhs - rhs)
    err = np.where(np.isnan(err), np.inf, err)
    order = np.argsort(-err, kind="stable")[:WORST_SAMPLES]
    worst = tuple((float(xs[i]), float(lhs[i]), float(rhs[i])) for i in order)
    return CheckReport(
        check=check,
        fn=fn,
        p=p,
        q=q,
        convention=convention,
        grid=grid,
        max_abs_error=float(np.max(err)) if err.size else 0.0,
        tol=tol,
        worst=worst,
        sigma_equal=sigma_equal,
        info=dict(info or {}),
    )

# -*- coding: utf-8 -*-

"""Defaults and convention flags shared by the library, the checks and the CLI.

Notes
- Everything is configured through arguments / CLI flags; no env vars are read.
- The defaults are the conventions that make the diagrams commute
  (taylor_order = k - 1, identity-satisfying shift direction). The literal
  ones stay selectable so their residuals can be reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Literal

from cdiff.errors import SpecError

TaylorConvention = Literal["kminus1", "k"]
ShiftConvention = Literal["identity", "literal"]

# Series degree used when an ANALYTIC function is pushed into a finitely supported sigma.
SERIES_DEGREE = 16

# Tolerance ladder
ALGEBRA_TOL = 1e-9
QUADRATURE_TOL = 1e-6

# Node count for the numerical oracle when a catalog entry has no closed form.
ORACLE_NODES = 512

DEFAULT_GRID_POINTS = 101

# Grids that must avoid x = a start at a + GRID_NUDGE * (domain width).
GRID_NUDGE = 1e-3

# Default order sets of the acceptance suite.
PARALLEL_ORDERS: tuple[float, ...] = (0.0, 0.5, 1.0, 1.5)
PAIR_ORDERS: tuple[tuple[float, float], ...] = ((0.5, 0.5), (1.0, 0.5), (0.3, 0.7))


@dataclass(frozen=True)
class Conventions:
    taylor_order: TaylorConvention = "kminus1"
    shift: ShiftConvention = "identity"

    def __post_init__(self):
        if self.taylor_order not in ("kminus1", "k"):
            raise SpecError(f"expected kminus1|k, got {self.taylor_order!r}", where="--taylor-order")
        if self.shift not in ("identity", "literal"):
            raise SpecError(f"expected identity|literal, got {self.shift!r}", where="--shift")

    @classmethod
    def from_flags(cls, taylor_order: str | None = None, shift: str | None = None) -> "Conventions":
        return cls(
            taylor_order=(taylor_order or "kminus1").strip().lower(),  # type: ignore[arg-type]
            shift=(shift or "identity").strip().lower(),  # type: ignore[arg-type]
        )

    @property
    def literal_shift(self) -> bool:
        return self.shift == "literal"

    def resolve_taylor_order(self, smoothness_k: int | str) -> int:
        """Concrete truncation order for a class; ANALYTIC uses SERIES_DEGREE."""
        if not isinstance(smoothness_k, int):
            return SERIES_DEGREE
        return smoothness_k - 1 if self.taylor_order == "kminus1" else smoothness_k

    def to_payload(self, smoothness_k: int | str) -> dict[str, Any]:
        return {"taylor_order": self.resolve_taylor_order(smoothness_k), "shift": self.shift}


DEFAULT_CONVENTIONS = Conventions()

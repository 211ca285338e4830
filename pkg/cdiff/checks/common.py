# -*- coding: utf-8 -*-

"""Grids, oracles and evaluation helpers shared by the diagram checks."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from cdiff.catalog import CatalogEntry
from cdiff.errors import AdmissibilityError, PreconditionError
from cdiff.quadrature import QuadSpec
from cdiff.rlnum import FnHandle, rl_derivative
from cdiff.settings import DEFAULT_GRID_POINTS, GRID_NUDGE, ORACLE_NODES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Grid:
    lo: float
    hi: float
    n: int = DEFAULT_GRID_POINTS
    # Explicit points (comma-list grids); lo/hi/n then describe them.
    explicit: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.explicit:
            if self.n < 1:
                raise PreconditionError(f"grid needs n >= 1, got {self.n!r}")
            if self.n > 1 and not self.hi > self.lo:
                raise PreconditionError(f"grid needs lo < hi, got {self.lo!r}:{self.hi!r}")

    @classmethod
    def of_points(cls, points: Sequence[float]) -> "Grid":
        pts = tuple(float(x) for x in points)
        if not pts:
            raise PreconditionError("grid has no points")
        return cls(lo=min(pts), hi=max(pts), n=len(pts), explicit=pts)

    def points(self) -> np.ndarray:
        if self.explicit:
            return np.array(self.explicit, dtype=float)
        if self.n == 1:
            return np.array([self.lo], dtype=float)
        return np.linspace(self.lo, self.hi, self.n)

    def to_payload(self) -> dict[str, Any]:
        return {"lo": self.lo, "hi": self.hi, "n": self.n}


def span_grid(f: FnHandle, n: int = DEFAULT_GRID_POINTS) -> Grid:
    """The whole domain, endpoints included."""
    lo, hi = f.domain
    return Grid(lo=lo, hi=hi, n=n)


def derivative_grid(f: FnHandle, n: int = DEFAULT_GRID_POINTS) -> Grid:
    """(a, hi]: starts at a + GRID_NUDGE·(domain width)."""
    lo, hi = f.domain
    return Grid(lo=f.base_point + GRID_NUDGE * (hi - lo), hi=hi, n=n)


def nudge_above_base(f: FnHandle, xs: np.ndarray) -> np.ndarray:
    """Points at or below a move to a + GRID_NUDGE·(domain width)."""
    lo, hi = f.domain
    floor = f.base_point + GRID_NUDGE * (hi - lo)
    xs = np.asarray(xs, dtype=float)
    moved = xs <= f.base_point
    if np.any(moved):
        logger.debug("grid_nudge fn=%s points=%d to=%r", f.name, int(np.sum(moved)), floor)
    return np.where(moved, floor, xs)


def points_above_base(f: FnHandle, grid: Grid) -> np.ndarray:
    xs = grid.points()
    kept = xs[xs > f.base_point]
    if kept.size == 0:
        raise PreconditionError(f"grid {grid.lo!r}:{grid.hi!r} has no points above a={f.base_point!r}")
    return kept


def require_admissible(entry: CatalogEntry, *orders: float) -> None:
    for p in orders:
        if p > 0 and not entry.admits(p):
            raise AdmissibilityError(f"{entry.id}: order {p!r} needs p < {entry.handle.limit!r}")


def values(f: FnHandle, xs: np.ndarray) -> np.ndarray:
    return np.asarray(f(xs), dtype=float)


def oracle(entry: CatalogEntry, p: float, xs: np.ndarray, spec: QuadSpec) -> np.ndarray:
    """_aD_x^p f on xs: closed form when the entry has one, high-resolution quadrature otherwise."""
    closed = entry.closed_form(p, xs)
    if closed is not None:
        return closed
    fine = spec.with_nodes(max(spec.nodes, ORACLE_NODES))
    logger.debug("oracle_numeric fn=%s p=%g nodes=%d", entry.id, p, fine.nodes)
    return np.array([rl_derivative(entry.handle, p, float(x), fine) for x in xs])

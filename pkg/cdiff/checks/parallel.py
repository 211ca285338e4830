# -*- coding: utf-8 -*-

"""R D^p R⁻¹ f against _aD_x^p f: D^p on pairs acts parallel to the R-L differintegral."""

from __future__ import annotations

from dataclasses import dataclass

from cdiff.catalog import CatalogEntry
from cdiff.checks.common import Grid, derivative_grid, oracle, points_above_base, require_admissible, values
from cdiff.checks.report import CheckReport, compare
from cdiff.pairspace import decompose, pair_derivative, reconstruct
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.settings import DEFAULT_CONVENTIONS, QUADRATURE_TOL, Conventions


@dataclass(frozen=True)
class ParallelCheckContract:
    check_name: str = "parallel"
    tol: float = QUADRATURE_TOL


CONTRACT = ParallelCheckContract()


def check_parallel(
    entry: CatalogEntry,
    p: float,
    grid: Grid | None = None,
    tol: float | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    spec: QuadSpec = DEFAULT_QUAD,
) -> CheckReport:
    f = entry.handle
    require_admissible(entry, p)
    grid = grid or derivative_grid(f)
    xs = points_above_base(f, grid)
    pair = pair_derivative(decompose(f, None, spec, conventions), p, spec, conventions)
    lhs = values(reconstruct(pair, spec), xs)
    rhs = oracle(entry, p, xs, spec)
    return compare(
        CONTRACT.check_name,
        entry.id,
        xs,
        lhs,
        rhs,
        tol=CONTRACT.tol if tol is None else tol,
        grid=grid,
        convention=conventions.to_payload(f.smoothness_k),
        p=p,
    )

# -*- coding: utf-8 -*-

"""Round trip R(R⁻¹ f) = f.

With taylor_order = k - 1 the error is floating-point noise. With the literal
taylor_order = k the residual is the k-th Taylor term f^(k)(a)(x-a)^k/k!; its
grid maximum is reported alongside so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cdiff.catalog import CatalogEntry
from cdiff.checks.common import Grid, span_grid, values
from cdiff.checks.report import CheckReport, compare
from cdiff.pairspace import decompose, reconstruct
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.settings import ALGEBRA_TOL, DEFAULT_CONVENTIONS, Conventions
from cdiff.special import rgamma


@dataclass(frozen=True)
class ReconstructionCheckContract:
    check_name: str = "reconstruction"
    tol: float = ALGEBRA_TOL


CONTRACT = ReconstructionCheckContract()


def check_reconstruction(
    entry: CatalogEntry,
    taylor_order: int | None = None,
    grid: Grid | None = None,
    tol: float | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    spec: QuadSpec = DEFAULT_QUAD,
) -> CheckReport:
    f = entry.handle
    grid = grid or span_grid(f)
    if taylor_order is None:
        taylor_order = conventions.resolve_taylor_order(f.smoothness_k)
    xs = grid.points()
    pair = decompose(f, taylor_order, spec, conventions)
    lhs = values(reconstruct(pair, spec), xs)
    rhs = values(f, xs)

    info = {}
    if not f.is_analytic:
        k = f.smoothness_k
        term = f.jet_value(k) * rgamma(k + 1.0) * np.power(xs - f.base_point, k)
        info["kth_term_max"] = float(np.max(np.abs(term)))

    return compare(
        CONTRACT.check_name,
        entry.id,
        xs,
        lhs,
        rhs,
        tol=CONTRACT.tol if tol is None else tol,
        grid=grid,
        convention={"taylor_order": taylor_order, "shift": conventions.shift},
        p=0.0,
        info=info,
    )

# -*- coding: utf-8 -*-

"""D^q D^p = D^p D^q on pairs.

The σ components are compared exactly (SigmaSeq equality, no tolerance); the
reconstructed functions are compared on the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from cdiff.catalog import CatalogEntry
from cdiff.checks.common import Grid, derivative_grid, points_above_base, require_admissible, values
from cdiff.checks.report import CheckReport, compare
from cdiff.pairspace import decompose, pair_derivative, reconstruct
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.settings import DEFAULT_CONVENTIONS, QUADRATURE_TOL, Conventions


@dataclass(frozen=True)
class CommuteCheckContract:
    check_name: str = "commute"
    tol: float = QUADRATURE_TOL


CONTRACT = CommuteCheckContract()


def check_commute(
    entry: CatalogEntry,
    p: float,
    q: float,
    grid: Grid | None = None,
    tol: float | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    spec: QuadSpec = DEFAULT_QUAD,
) -> CheckReport:
    f = entry.handle
    require_admissible(entry, p, q, math.fsum((p, q)))
    grid = grid or derivative_grid(f)
    xs = points_above_base(f, grid)

    pair = decompose(f, None, spec, conventions)
    qp = pair_derivative(pair_derivative(pair, p, spec, conventions), q, spec, conventions)
    pq = pair_derivative(pair_derivative(pair, q, spec, conventions), p, spec, conventions)

    return compare(
        CONTRACT.check_name,
        entry.id,
        xs,
        values(reconstruct(qp, spec), xs),
        values(reconstruct(pq, spec), xs),
        tol=CONTRACT.tol if tol is None else tol,
        grid=grid,
        convention=conventions.to_payload(f.smoothness_k),
        p=p,
        q=q,
        sigma_equal=qp.sigma == pq.sigma,
    )

# -*- coding: utf-8 -*-

"""R D^q D^p R⁻¹ f against _aD_x^(p+q) f.

Also reports max |_aD^(p+q) T(f)| over the grid (info "dropped_term_max"): the
power-rule image of the Taylor part, which a function-side argument has to
discard to get from D^q D^p to D^(p+q). It never enters the verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cdiff.catalog import CatalogEntry
from cdiff.checks.common import Grid, derivative_grid, oracle, points_above_base, require_admissible, values
from cdiff.checks.report import CheckReport, compare
from cdiff.pairspace import decompose, pair_derivative, reconstruct
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.settings import DEFAULT_CONVENTIONS, QUADRATURE_TOL, Conventions
from cdiff.sigma import sigma_eval, sigma_shift


@dataclass(frozen=True)
class CompositionCheckContract:
    check_name: str = "composition"
    tol: float = QUADRATURE_TOL


CONTRACT = CompositionCheckContract()


def check_composition(
    entry: CatalogEntry,
    p: float,
    q: float,
    grid: Grid | None = None,
    tol: float | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    spec: QuadSpec = DEFAULT_QUAD,
) -> CheckReport:
    f = entry.handle
    total = math.fsum((p, q))
    require_admissible(entry, p, q, total)
    grid = grid or derivative_grid(f)
    xs = points_above_base(f, grid)

    pair = decompose(f, None, spec, conventions)
    chained = pair_derivative(pair_derivative(pair, p, spec, conventions), q, spec, conventions)
    lhs = values(reconstruct(chained, spec), xs)
    rhs = oracle(entry, total, xs, spec)

    dropped = np.asarray(sigma_eval(sigma_shift(pair.sigma, total), xs), dtype=float)
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
        q=q,
        info={"dropped_term_max": float(np.max(np.abs(dropped)))},
    )

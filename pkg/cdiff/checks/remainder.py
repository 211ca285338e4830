# -*- coding: utf-8 -*-

"""f - R[T_(k-1) f] against _aI_x^k [f^(k)]: the subtraction form of f_a is the
double differintegral _aD^(-k)[_aD^k f]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cdiff.catalog import CatalogEntry
from cdiff.checks.common import Grid, derivative_grid, points_above_base, values
from cdiff.checks.report import CheckReport, compare
from cdiff.errors import PreconditionError
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.rlnum import derivative_handle, rl_integral, taylor_poly
from cdiff.settings import DEFAULT_CONVENTIONS, Conventions
from cdiff.sigma import sigma_eval


@dataclass(frozen=True)
class RemainderCheckContract:
    check_name: str = "remainder"
    tol: float = 1e-7


CONTRACT = RemainderCheckContract()


def check_remainder_identity(
    entry: CatalogEntry,
    spec: QuadSpec = DEFAULT_QUAD,
    grid: Grid | None = None,
    tol: float | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
) -> CheckReport:
    f = entry.handle
    k = entry.class_k
    if k is None or k < 1:
        raise PreconditionError(f"{entry.id}: remainder identity needs an integer class k >= 1")
    grid = grid or derivative_grid(f)
    xs = points_above_base(f, grid)

    lhs = values(f, xs) - np.asarray(sigma_eval(taylor_poly(f, k - 1), xs), dtype=float)
    fk = derivative_handle(f, k)
    rhs = np.array([rl_integral(fk, float(k), float(x), spec) for x in xs])
    return compare(
        CONTRACT.check_name,
        entry.id,
        xs,
        lhs,
        rhs,
        tol=CONTRACT.tol if tol is None else tol,
        grid=grid,
        convention={"taylor_order": k - 1, "shift": conventions.shift},
        p=float(k),
    )

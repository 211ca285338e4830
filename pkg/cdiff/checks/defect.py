# -*- coding: utf-8 -*-

"""The composition defect of the R-L operator:

    _aD^(-q)[_aD^k f] = _aD^(k-q) f - _aD^(k-q)[T_(k-1) f]

Integrating the k-th derivative back does not return D^(k-q) f; the difference
is the power-rule image of the Taylor part. The verdict is on the identity
itself. Reported alongside:
- defect_max: max |_aD^(k-q) T f| over the grid (how far R-L is from composing);
- pair_residual: max |R D^(-q) D^k R⁻¹ f - _aD^(k-q) f| (zero up to quadrature
  error on pairs, where σ keeps the shifted-out terms).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cdiff.catalog import CatalogEntry
from cdiff.checks.common import Grid, derivative_grid, oracle, points_above_base, values
from cdiff.checks.report import CheckReport, compare
from cdiff.errors import PreconditionError
from cdiff.pairspace import decompose, pair_derivative, reconstruct
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.rlnum import derivative_handle, rl_integral, taylor_poly
from cdiff.settings import DEFAULT_CONVENTIONS, QUADRATURE_TOL, Conventions
from cdiff.sigma import sigma_eval, sigma_shift
from cdiff.special import require_finite


@dataclass(frozen=True)
class DefectCheckContract:
    check_name: str = "defect"
    tol: float = QUADRATURE_TOL
    default_q: float = 0.5


CONTRACT = DefectCheckContract()


def check_defect(
    entry: CatalogEntry,
    q: float | None = None,
    grid: Grid | None = None,
    tol: float | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    spec: QuadSpec = DEFAULT_QUAD,
) -> CheckReport:
    f = entry.handle
    k = entry.class_k
    if k is None or k < 1:
        raise PreconditionError(f"{entry.id}: defect check needs an integer class k >= 1")
    q = CONTRACT.default_q if q is None else require_finite(q, "q")
    if q <= 0:
        raise PreconditionError(f"defect check needs q > 0, got {q!r}")
    grid = grid or derivative_grid(f)
    xs = points_above_base(f, grid)
    order = float(k) - q

    fk = derivative_handle(f, k)
    lhs = np.array([rl_integral(fk, q, float(x), spec) for x in xs])
    target = oracle(entry, order, xs, spec)
    defect = np.asarray(sigma_eval(sigma_shift(taylor_poly(f, k - 1), order), xs), dtype=float)

    pair = decompose(f, None, spec, conventions)
    chained = pair_derivative(pair_derivative(pair, float(k), spec, conventions), -q, spec, conventions)
    pair_values = values(reconstruct(chained, spec), xs)

    return compare(
        CONTRACT.check_name,
        entry.id,
        xs,
        lhs,
        target - defect,
        tol=CONTRACT.tol if tol is None else tol,
        grid=grid,
        convention=conventions.to_payload(f.smoothness_k),
        p=float(k),
        q=q,
        info={
            "defect_max": float(np.max(np.abs(defect))),
            "pair_residual": float(np.max(np.abs(pair_values - target))),
        },
    )

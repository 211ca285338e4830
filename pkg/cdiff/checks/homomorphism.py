# -*- coding: utf-8 -*-

"""R and R⁻¹ are homomorphisms: R(R⁻¹f + c·R⁻¹g) = f + c·g."""

from __future__ import annotations

from dataclasses import dataclass

from cdiff.catalog import CatalogEntry
from cdiff.checks.common import Grid, values
from cdiff.checks.report import CheckReport, compare
from cdiff.errors import BasePointMismatchError
from cdiff.pairspace import decompose, pair_add, pair_scale, reconstruct
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.settings import ALGEBRA_TOL, DEFAULT_CONVENTIONS, Conventions
from cdiff.special import require_finite


@dataclass(frozen=True)
class HomomorphismCheckContract:
    check_name: str = "homomorphism"
    tol: float = ALGEBRA_TOL


CONTRACT = HomomorphismCheckContract()


def check_homomorphism(
    f_entry: CatalogEntry,
    g_entry: CatalogEntry,
    c: float = 1.0,
    grid: Grid | None = None,
    tol: float | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    spec: QuadSpec = DEFAULT_QUAD,
) -> CheckReport:
    f, g = f_entry.handle, g_entry.handle
    c = require_finite(c, "c")
    if f.base_point != g.base_point:
        raise BasePointMismatchError(f"{f_entry.id} and {g_entry.id} have different base points")
    grid = grid or Grid(lo=max(f.domain[0], g.domain[0]), hi=min(f.domain[1], g.domain[1]))
    xs = grid.points()

    summed = pair_add(
        decompose(f, None, spec, conventions),
        pair_scale(c, decompose(g, None, spec, conventions), spec),
        spec,
    )
    return compare(
        CONTRACT.check_name,
        f"{f_entry.id}+{c:g}*{g_entry.id}",
        xs,
        values(reconstruct(summed, spec), xs),
        values(f, xs) + c * values(g, xs),
        tol=CONTRACT.tol if tol is None else tol,
        grid=grid,
        convention=conventions.to_payload(f.smoothness_k),
        p=0.0,
        info={"c": c},
    )

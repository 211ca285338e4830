# -*- coding: utf-8 -*-

"""Verification harness: plans checks per catalog entry and runs them.

plan() turns a selection (check name, orders, optional second function) into
a list of zero-argument tasks in declaration order; run_suite() executes them
on a thread pool and returns the reports in that same order.

Without explicit orders a check runs over the default order sets, filtered by
the entry's class. Explicit orders are never filtered: an inadmissible order
raises AdmissibilityError.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from cdiff.catalog import CatalogEntry, catalog
from cdiff.checks import (
    CheckReport,
    Grid,
    check_commute,
    check_composition,
    check_defect,
    check_homomorphism,
    check_parallel,
    check_reconstruction,
    check_remainder_identity,
)
from cdiff.errors import PreconditionError
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.settings import DEFAULT_CONVENTIONS, PAIR_ORDERS, PARALLEL_ORDERS, Conventions

logger = logging.getLogger(__name__)

Task = Callable[[], CheckReport]

DIAGRAM_CHECKS: tuple[str, ...] = ("reconstruction", "parallel", "commute", "composition", "remainder")
EXTRA_CHECKS: tuple[str, ...] = ("defect", "homomorphism")
CHECK_NAMES: tuple[str, ...] = DIAGRAM_CHECKS + EXTRA_CHECKS


@dataclass(frozen=True)
class Selection:
    which: str = "all"
    p: float | None = None
    q: float | None = None
    g: CatalogEntry | None = None
    c: float = 1.0
    grid: Grid | None = None
    tol: float | None = None

    def __post_init__(self):
        if self.which != "all" and self.which not in CHECK_NAMES:
            raise PreconditionError(f"unknown check {self.which!r}; expected all|{'|'.join(CHECK_NAMES)}")

    @property
    def names(self) -> tuple[str, ...]:
        return DIAGRAM_CHECKS if self.which == "all" else (self.which,)


def _pair_orders(entry: CatalogEntry, sel: Selection) -> list[tuple[float, float]]:
    if sel.p is not None and sel.q is not None:
        return [(sel.p, sel.q)]
    return [
        (p, q) for p, q in PAIR_ORDERS if entry.admits(p) and entry.admits(q) and entry.admits(math.fsum((p, q)))
    ]


def plan(
    entry: CatalogEntry,
    sel: Selection,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    spec: QuadSpec = DEFAULT_QUAD,
) -> list[Task]:
    common = dict(grid=sel.grid, tol=sel.tol, conventions=conventions, spec=spec)
    tasks: list[Task] = []
    for name in sel.names:
        if name == "reconstruction":
            tasks.append(lambda: check_reconstruction(entry, None, **common))
        elif name == "parallel":
            orders = [sel.p] if sel.p is not None else [p for p in PARALLEL_ORDERS if entry.admits(p)]
            tasks.extend(lambda p=p: check_parallel(entry, p, **common) for p in orders)
        elif name == "commute":
            tasks.extend(lambda p=p, q=q: check_commute(entry, p, q, **common) for p, q in _pair_orders(entry, sel))
        elif name == "composition":
            tasks.extend(
                lambda p=p, q=q: check_composition(entry, p, q, **common) for p, q in _pair_orders(entry, sel)
            )
        elif name == "remainder":
            k = entry.class_k
            if sel.which == "all" and (k is None or k < 1):
                logger.debug("skip check=remainder fn=%s class_k=%s", entry.id, k)
                continue
            tasks.append(
                lambda: check_remainder_identity(
                    entry, spec, grid=sel.grid, tol=sel.tol, conventions=conventions
                )
            )
        elif name == "defect":
            tasks.append(lambda: check_defect(entry, sel.q, **common))
        elif name == "homomorphism":
            if sel.g is None:
                raise PreconditionError("homomorphism check needs a second function (--g)")
            tasks.append(lambda: check_homomorphism(entry, sel.g, sel.c, **common))
    return tasks


def run_tasks(tasks: Sequence[Task], max_workers: int | None = None) -> list[CheckReport]:
    if not tasks:
        return []
    if max_workers == 1 or len(tasks) == 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda task: task(), tasks))


def run_suite(
    entries: Iterable[CatalogEntry] | None = None,
    sel: Selection | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    spec: QuadSpec = DEFAULT_QUAD,
    max_workers: int | None = None,
) -> list[CheckReport]:
    """All selected checks over entries (default: the whole catalog, default order sets)."""
    sel = sel or Selection()
    entries = list(entries) if entries is not None else catalog()
    tasks: list[Task] = []
    for entry in entries:
        tasks.extend(plan(entry, sel, conventions, spec))
    reports = run_tasks(tasks, max_workers)
    logger.info("suite_done %s", summarize(reports))
    return reports


def summarize(reports: Sequence[CheckReport]) -> str:
    passed = sum(1 for r in reports if r.passed)
    return f"checks={len(reports)} pass={passed} fail={len(reports) - passed}"

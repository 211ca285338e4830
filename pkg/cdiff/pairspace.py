# -*- coding: utf-8 -*-

"""The pair space C_diff: f <-> (f_a, σ), and D^p acting componentwise.

decompose splits f into a jet-free remainder f_a and the Taylor jet σ at a;
reconstruct adds them back. pair_derivative applies the R-L differintegral to
f_a and the shift operator to σ, which is what makes D^p commute with itself
on pairs while it does not on functions.

Notes
- f_a is f - R[T_(k-1) f] (the Taylor-remainder identity gives I^k D^k f), for
  either taylor-order convention. With the literal taylor_order = k, σ keeps
  the k-th term too and the round trip is off by exactly that term.
- ANALYTIC inputs decompose to (0, jet truncated at SERIES_DEGREE).
- Applied orders are kept per pair; the running total is their math.fsum, so
  D^q D^p and D^p D^q carry identical metadata.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Sequence

import numpy as np

from cdiff.errors import AdmissibilityError, BasePointMismatchError, DomainError, PreconditionError
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.rlnum import (
    ANALYTIC,
    FnHandle,
    add_handles,
    polynomial_handle,
    rl_handle,
    scale_handle,
    sigma_handle,
    taylor_poly,
    zero_handle,
)
from cdiff.settings import DEFAULT_CONVENTIONS, Conventions
from cdiff.sigma import SigmaSeq, sigma_add, sigma_scale, sigma_shift
from cdiff.special import require_finite, rgamma

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiffPair:
    fa: FnHandle
    sigma: SigmaSeq
    class_k: int | str
    orders: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.sigma.is_zero and self.sigma.base_point != self.fa.base_point:
            raise BasePointMismatchError(
                f"fa at a={self.fa.base_point!r} but sigma at a={self.sigma.base_point!r}"
            )

    @property
    def base_point(self) -> float:
        return self.fa.base_point

    @property
    def accumulated(self) -> float:
        return math.fsum(self.orders) if self.orders else 0.0

    @property
    def budget(self) -> float:
        """A further positive order must stay below this."""
        if self.class_k == ANALYTIC:
            return math.inf
        return float(self.class_k) + 1.0 - self.accumulated

    def to_payload(self, preview: Sequence[float] = ()) -> dict[str, Any]:
        xs = np.asarray(list(preview), dtype=float)
        values = np.asarray(self.fa(xs), dtype=float) if xs.size else np.zeros(0)
        return {
            "a": self.base_point,
            "class_k": self.class_k,
            "orders": list(self.orders),
            "sigma": [[e, c] for e, c in self.sigma.terms],
            "fa": {
                "description": "f minus Rσ",
                "name": self.fa.name,
                "preview": [[float(x), float(v)] for x, v in zip(xs, values)],
            },
        }


def decompose(
    f: FnHandle,
    taylor_order: int | None = None,
    spec: QuadSpec = DEFAULT_QUAD,
    conventions: Conventions = DEFAULT_CONVENTIONS,
) -> DiffPair:
    """R⁻¹f = (f_a, σ). taylor_order defaults to the convention's choice (k - 1)."""
    if not f.domain[1] > f.base_point:
        raise DomainError(f"{f.name}: domain has empty interior above a={f.base_point!r}")
    if f.form is not None or f.order_limit is not None:
        raise PreconditionError(f"{f.name}: decompose needs a plain handle with a known class")
    if taylor_order is None:
        taylor_order = conventions.resolve_taylor_order(f.smoothness_k)

    if f.is_analytic:
        if taylor_order < 0:
            raise PreconditionError(f"series degree must be >= 0, got {taylor_order!r}")
        sigma = taylor_poly(f, taylor_order)
        return DiffPair(fa=zero_handle(f.base_point, f.domain), sigma=sigma, class_k=ANALYTIC)

    k = f.smoothness_k
    if taylor_order not in (k - 1, k):
        raise PreconditionError(
            f"{f.name}: taylor_order must be {k - 1} or {k} for class C^{k}, got {taylor_order!r}"
        )
    sigma = taylor_poly(f, taylor_order)
    rem = taylor_poly(f, k - 1)
    if rem.is_zero:
        fa = f
    else:
        poly = polynomial_handle(
            [c * rgamma(e + 1.0) for e, c in _dense(rem)], f.base_point, f.domain, name=f"T{k - 1}"
        )
        fa = add_handles(f, scale_handle(-1.0, poly, spec), spec)
        fa = replace(fa, name=f"{f.name} - Rσ")
    logger.debug("decompose fn=%s k=%s taylor_order=%s sigma_terms=%d", f.name, k, taylor_order, len(sigma))
    return DiffPair(fa=fa, sigma=sigma, class_k=k)


def _dense(s: SigmaSeq) -> list[tuple[float, float]]:
    # integer support 0..n, zeros filled in
    lookup = dict(s.terms)
    n = int(max(lookup))
    return [(float(i), lookup.get(float(i), 0.0)) for i in range(n + 1)]


def reconstruct(pair: DiffPair, spec: QuadSpec = DEFAULT_QUAD) -> FnHandle:
    """R(f_a, σ) = f_a + Rσ."""
    if pair.sigma.is_zero:
        return pair.fa
    return add_handles(pair.fa, sigma_handle(pair.sigma, pair.fa.domain, spec), spec)


def pair_derivative(
    pair: DiffPair,
    order: float,
    spec: QuadSpec = DEFAULT_QUAD,
    conventions: Conventions = DEFAULT_CONVENTIONS,
) -> DiffPair:
    """D^p(f_a, σ) = (_aD_x^p f_a, D^p σ)."""
    order = require_finite(order, "order")
    if order == 0.0:
        return pair
    total = math.fsum(pair.orders + (order,))
    if pair.class_k != ANALYTIC:
        bound = float(pair.class_k) + 1.0
        if order >= bound or total >= bound:
            raise AdmissibilityError(
                f"order {order!r} (running total {total!r}) needs < k + 1 = {bound!r}"
            )
    fa = rl_handle(pair.fa, order, spec)
    sigma = sigma_shift(pair.sigma, order, literal=conventions.literal_shift)
    return DiffPair(fa=fa, sigma=sigma, class_k=pair.class_k, orders=pair.orders + (order,))


def pair_add(p: DiffPair, q: DiffPair, spec: QuadSpec = DEFAULT_QUAD) -> DiffPair:
    """Componentwise sum; the sum keeps the smaller remaining order budget of the two."""
    if p.base_point != q.base_point:
        raise BasePointMismatchError(f"base points differ: {p.base_point!r} != {q.base_point!r}")
    tight = p if p.budget <= q.budget else q
    return DiffPair(
        fa=add_handles(p.fa, q.fa, spec),
        sigma=sigma_add(p.sigma, q.sigma),
        class_k=tight.class_k,
        orders=tight.orders,
    )


def pair_scale(c: float, p: DiffPair, spec: QuadSpec = DEFAULT_QUAD) -> DiffPair:
    c = require_finite(c, "c")
    if c == 1.0:
        return p
    return DiffPair(
        fa=scale_handle(c, p.fa, spec),
        sigma=sigma_scale(c, p.sigma),
        class_k=p.class_k,
        orders=p.orders,
    )


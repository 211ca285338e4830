# -*- coding: utf-8 -*-

"""Test functions with a known class C^k and, where possible, closed-form differintegrals.

Entries:
- pow_0.5, pow_1.5, pow_2.5: (x - a)^mu on [a, a + 3], class floor(mu), power rule.
- abs1, abs2: x|x| and x^2|x| on [-1, 2], classes 1 and 2. On [a, x] with x > a = 0
  they coincide with x^2 and x^3, so the power rule applies.
- abs1_affine: 1 + x + x|x| (class 1, nonzero jet).
- poly2, poly3, poly5: polynomials (ANALYTIC), termwise power rule.
- sin: ANALYTIC, no closed form (numerical oracle).

Every closed form is compared against rl_derivative at 5 points when the catalog
is first built; a disagreement raises CatalogError.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from cdiff.errors import CatalogError, CdiffError, PreconditionError
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.rlnum import ANALYTIC, FnHandle, polynomial_handle, rl_derivative, rl_power_rule
from cdiff.special import gamma, require_finite

logger = logging.getLogger(__name__)

ClosedForm = Callable[[float, float], float]

SELF_CHECK_ORDERS: tuple[float, ...] = (0.5, -0.5)
SELF_CHECK_TOL = 1e-6


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    handle: FnHandle
    closed_form_differint: ClosedForm | None = None
    notes: str = ""
    # Class assumed by the remainder and defect checks for ANALYTIC entries (polynomial degree).
    truncation_k: int | None = None

    @property
    def class_k(self) -> int | None:
        """Integer class used by the Taylor-remainder checks; None when there is none."""
        if self.handle.smoothness_k != ANALYTIC:
            return self.handle.smoothness_k
        return self.truncation_k

    def admits(self, p: float) -> bool:
        return p < self.handle.limit

    def closed_form(self, p: float, xs: np.ndarray) -> np.ndarray | None:
        if self.closed_form_differint is None:
            return None
        return np.array([self.closed_form_differint(p, float(x)) for x in np.ravel(xs)]).reshape(np.shape(xs))

    def self_check(self, spec: QuadSpec = DEFAULT_QUAD) -> None:
        if self.closed_form_differint is None:
            return
        a = self.handle.base_point
        hi = self.handle.domain[1]
        xs = a + (hi - a) * np.array([0.1, 0.3, 0.5, 0.7, 0.9])
        for p in SELF_CHECK_ORDERS:
            if not self.admits(p):
                continue
            for x in xs:
                want = self.closed_form_differint(p, float(x))
                got = rl_derivative(self.handle, p, float(x), spec)
                if not abs(got - want) <= SELF_CHECK_TOL * max(1.0, abs(want)):
                    raise CatalogError(
                        f"{self.id}: closed form {want!r} vs rl_derivative {got!r} at p={p!r}, x={x!r}"
                    )


def _power_derivative(mu: float, i: int, a: float):
    coef = gamma(mu + 1.0) / gamma(mu - i + 1.0)
    return lambda x: coef * np.power(np.asarray(x, dtype=float) - a, mu - i)


def power_entry(
    mu: float,
    a: float = 0.0,
    domain: tuple[float, float] | None = None,
    *,
    id: str | None = None,
) -> CatalogEntry:
    """(x - a)^mu; integer mu >= 0 is a polynomial."""
    mu = require_finite(mu, "mu")
    if mu < 0:
        raise PreconditionError(f"power entries need mu >= 0, got {mu!r}")
    domain = domain or (a, a + 3.0)
    name = id or f"pow_{mu:g}"
    if mu == math.floor(mu):
        n = int(mu)
        handle = polynomial_handle([0.0] * n + [1.0], a, domain, name=name)
        return CatalogEntry(
            id=name,
            handle=handle,
            closed_form_differint=lambda p, x: rl_power_rule(float(n), p, a, x),
            notes="monomial; power rule",
            truncation_k=n,
        )
    if domain[0] < a:
        raise PreconditionError(f"(x - a)^{mu:g} is not real below a; domain must start at a")
    k = math.floor(mu)
    handle = FnHandle(
        evaluator=lambda x: np.power(np.maximum(np.asarray(x, dtype=float) - a, 0.0), mu),
        smoothness_k=k,
        base_point=a,
        domain=domain,
        jet=(0.0,) * (k + 1),
        derivatives=tuple(_power_derivative(mu, i, a) for i in range(1, k + 2)),
        derivative_rule=lambda i: _power_derivative(mu, i, a),
        endpoint_exponent=mu,
        name=name,
    )
    return CatalogEntry(
        id=name,
        handle=handle,
        closed_form_differint=lambda p, x: rl_power_rule(mu, p, a, x),
        notes="power rule",
    )


def _abspow_derivative(n: int, i: int, a: float):
    # d^i/dx^i sign(x) x^(n+1), x measured from a
    coef = math.factorial(n + 1) / math.factorial(n + 1 - i)

    def ev(x):
        t = np.asarray(x, dtype=float) - a
        return coef * np.sign(t) * np.power(t, n + 1 - i)

    return ev


def abspow_entry(
    n: int,
    poly: Sequence[float] = (),
    a: float = 0.0,
    domain: tuple[float, float] | None = None,
    *,
    id: str | None = None,
) -> CatalogEntry:
    """Σ poly_i (x - a)^i + (x - a)^n |x - a|, class C^n."""
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise PreconditionError(f"abspow needs an integer n >= 0, got {n!r}")
    n = int(n)
    coeffs = [require_finite(c, "poly") for c in poly]
    domain = domain or (a - 1.0, a + 2.0)
    name = id or f"abs{n}"
    base = polynomial_handle(coeffs or [0.0], a, domain, name=name)
    kinked = [_abspow_derivative(n, i, a) for i in range(n + 2)]

    def derivative(i: int):
        d = base.derivative(i)
        return lambda x: np.asarray(d(x), dtype=float) + kinked[i](x)

    handle = FnHandle(
        evaluator=derivative(0),
        smoothness_k=n,
        base_point=a,
        domain=domain,
        jet=tuple(base.jet_value(i) for i in range(n + 1)),
        derivatives=tuple(derivative(i) for i in range(1, n + 2)),
        name=name,
    )

    def closed(p: float, x: float) -> float:
        total = rl_power_rule(float(n + 1), p, a, x)
        for i, c in enumerate(coeffs):
            if c != 0.0:
                total += c * rl_power_rule(float(i), p, a, x)
        return total

    return CatalogEntry(
        id=name,
        handle=handle,
        closed_form_differint=closed,
        notes=f"(x-a)^{n}|x-a| equals (x-a)^{n + 1} on [a, x]; termwise power rule",
    )


def poly_entry(
    coefficients: Sequence[float],
    a: float = 0.0,
    domain: tuple[float, float] | None = None,
    *,
    id: str = "poly",
) -> CatalogEntry:
    coeffs = [require_finite(c, "coefficient") for c in coefficients] or [0.0]
    domain = domain or (a - 1.0, a + 2.0)
    handle = polynomial_handle(coeffs, a, domain, name=id)

    def closed(p: float, x: float) -> float:
        return math.fsum(c * rl_power_rule(float(i), p, a, x) for i, c in enumerate(coeffs) if c != 0.0)

    degree = max((i for i, c in enumerate(coeffs) if c != 0.0), default=0)
    return CatalogEntry(
        id=id,
        handle=handle,
        closed_form_differint=closed,
        notes="termwise power rule",
        truncation_k=degree,
    )


def sin_entry(a: float = 0.0, domain: tuple[float, float] | None = None, *, id: str = "sin") -> CatalogEntry:
    domain = domain or (a - 1.0, a + 2.0)
    cycle = (math.sin(a), math.cos(a), -math.sin(a), -math.cos(a))
    handle = FnHandle(
        evaluator=np.sin,
        smoothness_k=ANALYTIC,
        base_point=a,
        domain=domain,
        jet_rule=lambda i: cycle[i % 4],
        derivative_rule=lambda i: (lambda x, _s=i * math.pi / 2.0: np.sin(np.asarray(x, dtype=float) + _s)),
        name=id,
    )
    return CatalogEntry(id=id, handle=handle, notes="numerical oracle only")


def _build() -> list[CatalogEntry]:
    return [
        power_entry(0.5),
        power_entry(1.5),
        power_entry(2.5),
        abspow_entry(1),
        abspow_entry(2),
        abspow_entry(1, poly=(1.0, 1.0), id="abs1_affine"),
        poly_entry((0.0, 0.0, 1.0), id="poly2"),
        poly_entry((0.0, 0.0, 0.0, 1.0), id="poly3"),
        poly_entry((1.0, -2.0, 0.0, 0.5, 0.0, 0.1), id="poly5"),
        sin_entry(),
    ]


@lru_cache(maxsize=1)
def _loaded() -> tuple[CatalogEntry, ...]:
    entries = _build()
    for entry in entries:
        try:
            entry.handle.validate()
            entry.self_check()
        except CatalogError:
            raise
        except CdiffError as e:
            raise CatalogError(f"{entry.id}: {e}") from e
    logger.debug("catalog_loaded entries=%d", len(entries))
    return tuple(entries)


def catalog() -> list[CatalogEntry]:
    return list(_loaded())


def lookup(entry_id: str) -> CatalogEntry:
    for entry in _loaded():
        if entry.id == entry_id:
            return entry
    known = ", ".join(e.id for e in _loaded())
    raise CatalogError(f"unknown catalog id {entry_id!r} (known: {known})")

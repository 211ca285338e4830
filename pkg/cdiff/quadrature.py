# -*- coding: utf-8 -*-

"""Gauss–Jacobi quadrature for weakly singular Riemann–Liouville kernels.

On t = a + (x - a)·u the fractional integral becomes

    (1/Γ(q)) ∫_a^x f(t)(x-t)^(q-1) dt
        = (x-a)^(q+β)/Γ(q) ∫_0^1 g(a + (x-a)u) (1-u)^(q-1) u^β du,

with f(t) = (t-a)^β g(t). The rule's weight (1-u)^(q-1) u^β absorbs both
endpoint singularities, so smooth g converges spectrally.

Notes
- Rules are cached per (n, α, β); node doubling reuses nothing else.
- Convergence test is mixed absolute/relative: |I_2n - I_n| <= tol·max(1, |I_2n|).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

from cdiff.errors import DomainError, NonConvergenceError, PreconditionError
from cdiff.special import rgamma

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadSpec:
    nodes: int = 64
    adaptive_tol: float = 1e-10
    max_refinements: int = 12
    # roots_jacobi cost grows quickly; doubling stops here even if refinements remain.
    max_nodes: int = 16384

    def __post_init__(self):
        if isinstance(self.nodes, bool) or not isinstance(self.nodes, int) or self.nodes < 2:
            raise PreconditionError(f"QuadSpec.nodes must be an integer >= 2, got {self.nodes!r}")
        if not (math.isfinite(self.adaptive_tol) and self.adaptive_tol > 0):
            raise PreconditionError(f"QuadSpec.adaptive_tol must be > 0, got {self.adaptive_tol!r}")
        if not isinstance(self.max_refinements, int) or self.max_refinements < 1:
            raise PreconditionError(f"QuadSpec.max_refinements must be >= 1, got {self.max_refinements!r}")
        if self.max_nodes < self.nodes:
            raise PreconditionError("QuadSpec.max_nodes must be >= nodes")

    def with_nodes(self, nodes: int) -> "QuadSpec":
        return QuadSpec(nodes=nodes, adaptive_tol=self.adaptive_tol, max_refinements=self.max_refinements,
                        max_nodes=max(self.max_nodes, nodes))


DEFAULT_QUAD = QuadSpec()


@lru_cache(maxsize=512)
def jacobi_rule(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1] for the weight (1-u)^alpha · u^beta."""
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(f"Jacobi weight not integrable: alpha={alpha!r}, beta={beta!r}")
    s, w = roots_jacobi(n, alpha, beta)
    u = 0.5 * (1.0 + s)
    w = w * 2.0 ** (-(alpha + beta + 1.0))
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


def jacobi_estimate(g: Evaluator, a: float, x: float, q: float, beta: float, nodes: int) -> float:
    """Fixed-rule estimate of (1/Γ(q)) ∫_a^x g(t)(t-a)^β (x-t)^(q-1) dt."""
    h = x - a
    if h == 0.0:
        return 0.0
    u, w = jacobi_rule(nodes, q - 1.0, beta)
    vals = np.asarray(g(a + h * u), dtype=float)
    if vals.shape != u.shape:
        vals = np.broadcast_to(vals, u.shape)
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"integrand is not finite on ({a!r}, {x!r})")
    return float(h ** (q + beta) * rgamma(q) * np.dot(w, vals))


def jacobi_integral(g: Evaluator, a: float, x: float, q: float, beta: float, spec: QuadSpec) -> float:
    """Adaptive (node doubling) version of jacobi_estimate."""
    if q <= 0:
        raise PreconditionError(f"integral order must be > 0, got {q!r}")
    if x < a:
        raise DomainError(f"x={x!r} lies below the base point a={a!r}")
    if x == a:
        return 0.0
    n = spec.nodes
    prev = jacobi_estimate(g, a, x, q, beta, n)
    last = prev
    for _ in range(spec.max_refinements):
        if 2 * n > spec.max_nodes:
            break
        n *= 2
        prev, last = last, jacobi_estimate(g, a, x, q, beta, n)
        delta = abs(last - prev)
        if delta <= spec.adaptive_tol * max(1.0, abs(last)):
            return last
        logger.debug("quad_refine nodes=%d x=%r q=%r estimate=%r delta=%r", n, x, q, last, delta)
    logger.warning("quad_stalled x=%r q=%r beta=%r nodes=%d", x, q, beta, n)
    raise NonConvergenceError("Gauss-Jacobi refinement stalled", previous=prev, last=last, nodes=n)

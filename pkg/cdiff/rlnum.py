# -*- coding: utf-8 -*-

"""Riemann–Liouville integrals and derivatives of real order on function handles.

Pieces:
- FnHandle: an evaluatable f with its class C^k, base point a, domain, Taylor
  jet at a and (optionally) closed-form derivative evaluators.
- rl_integral / rl_derivative: pointwise _aI_x^q f and _aD_x^p f.
- rl_handle: _aD_x^p f as a new FnHandle (p < 0 integrates), so differintegrals
  can be chained.
- rl_power_rule: closed-form oracle for (x - a)^mu.
- taylor_poly: _aT(f) truncated, as a SigmaSeq.

Notes
- p > 0 uses the Caputo form: Σ_{i<m} f^(i)(a) (x-a)^(i-p)/Γ(i-p+1) + I^(m-p)[f^(m)],
  m = ceil(p). f^(m) comes from the handle's derivative evaluators, otherwise
  from Richardson-extrapolated central differences.
- A handle produced by rl_handle carries an RLForm: power terms (a SigmaSeq)
  plus fractional integrals I^s[g] of plain handles. Further operations act on
  that structure (I^r I^s = I^(r+s), D^p I^s = I^(s-p) for p <= s, Caputo on g
  otherwise) instead of differencing quadrature output.
- Power terms with a negative-integer exponent are the zero function here and
  are dropped before any further shift. That is the R-L composition defect.
- Differintegrals are anchored at a: they are defined for x >= a only. Values
  below a (the Remark's (a - ε, b) interval) come from the evaluator directly.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from cdiff.errors import (
    AdmissibilityError,
    BasePointMismatchError,
    DomainError,
    MissingDerivativeError,
    PreconditionError,
)
from cdiff.quadrature import DEFAULT_QUAD, Evaluator, QuadSpec, jacobi_integral
from cdiff.sigma import (
    SigmaSeq,
    drop_annihilated,
    is_annihilated,
    is_integer,
    sigma_add,
    sigma_eval,
    sigma_from_jet,
    sigma_scale,
    sigma_shift,
)
from cdiff.special import gamma, require_finite, rgamma

logger = logging.getLogger(__name__)

ANALYTIC = "analytic"

_EPS = float(np.finfo(float).eps)


def _snap(v: float) -> float:
    """Order arithmetic: pull values within 1e-12 of an integer onto it."""
    r = round(v)
    if abs(v - r) <= 1e-12 * max(1.0, abs(v)):
        return float(r)
    return v


def _regular_exponent(beta: float) -> float:
    # Integer endpoint exponents mean "smooth at a"; no weight needed.
    return 0.0 if is_integer(beta) and beta >= 0 else beta


@dataclass(frozen=True)
class RLForm:
    """Value = R(terms)(x) + Σ_j I^(s_j)[g_j](x); s_j == 0 stands for g_j itself."""

    terms: SigmaSeq
    parts: tuple[tuple[float, "FnHandle"], ...] = ()


@dataclass(frozen=True, eq=False)
class FnHandle:
    evaluator: Evaluator
    smoothness_k: int | str
    base_point: float
    domain: tuple[float, float]
    jet: tuple[float, ...] = ()
    jet_rule: Callable[[int], float] | None = None
    derivatives: tuple[Evaluator, ...] = ()
    derivative_rule: Callable[[int], Evaluator | None] | None = None
    # f^(i)(t) ~ (t - a)^(beta - i) · smooth near a
    endpoint_exponent: float = 0.0
    name: str = "f"
    # Set on derived handles: strict bound on further derivative orders.
    order_limit: float | None = None
    form: RLForm | None = field(default=None, repr=False)

    def __post_init__(self):
        a = require_finite(self.base_point, "base_point")
        lo, hi = (float(v) for v in self.domain)
        if math.isnan(lo) or math.isnan(hi) or not (lo <= a < hi):
            raise PreconditionError(f"{self.name}: domain {self.domain!r} must satisfy lo <= a={a!r} < hi")
        object.__setattr__(self, "domain", (lo, hi))
        k = self.smoothness_k
        if k != ANALYTIC:
            if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
                if isinstance(k, float) and k == int(k) and k >= 0:
                    object.__setattr__(self, "smoothness_k", int(k))
                else:
                    raise PreconditionError(
                        f"{self.name}: smoothness_k must be a nonnegative integer or ANALYTIC, got {k!r}"
                    )
            elif k < 0:
                raise PreconditionError(f"{self.name}: smoothness_k must be >= 0, got {k!r}")
            else:
                object.__setattr__(self, "smoothness_k", int(k))
        if self.order_limit is None and self.form is None:
            if self.smoothness_k == ANALYTIC:
                if self.jet_rule is None and not self.jet:
                    raise PreconditionError(f"{self.name}: ANALYTIC handles need a jet rule")
            elif len(self.jet) != self.smoothness_k + 1:
                raise PreconditionError(
                    f"{self.name}: jet has {len(self.jet)} entries, class C^{self.smoothness_k} needs "
                    f"{self.smoothness_k + 1}"
                )
        object.__setattr__(self, "jet", tuple(require_finite(v, "jet") for v in self.jet))
        if require_finite(self.endpoint_exponent, "endpoint_exponent") <= -1.0:
            raise PreconditionError(f"{self.name}: endpoint_exponent must be > -1")

    @property
    def is_analytic(self) -> bool:
        return self.smoothness_k == ANALYTIC

    @property
    def limit(self) -> float:
        """Derivative orders p must satisfy p < limit (k + 1 for C^k)."""
        if self.order_limit is not None:
            return self.order_limit
        if self.is_analytic:
            return math.inf
        return float(self.smoothness_k) + 1.0

    def jet_value(self, i: int) -> float:
        if i < len(self.jet):
            return self.jet[i]
        if self.jet_rule is not None:
            return float(self.jet_rule(i))
        raise PreconditionError(f"{self.name}: derivative of order {i} at a is not available")

    def derivative(self, i: int) -> Evaluator | None:
        if i == 0:
            return self.evaluator
        if i <= len(self.derivatives):
            return self.derivatives[i - 1]
        if self.derivative_rule is not None:
            return self.derivative_rule(i)
        return None

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        arr = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise DomainError(f"{self.name}: x must be finite")
        lo, hi = self.domain
        if np.any(arr < lo) or np.any(arr > hi):
            raise DomainError(f"{self.name}: x outside domain [{lo!r}, {hi!r}]")
        out = np.asarray(self.evaluator(arr), dtype=float)
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape).copy()
        if arr.ndim == 0:
            return float(out)
        return out

    def validate(self, *, points: int = 5, seed: int = 0, rtol: float = 1e-5) -> None:
        """Finite values on the domain and a finite-difference check of each closed-form derivative."""
        a = self.base_point
        lo, hi = self.domain
        hi_f = hi if math.isfinite(hi) else a + 1.0
        lo_f = lo if math.isfinite(lo) else a - 1.0
        rng = np.random.default_rng(seed)
        if not np.all(np.isfinite(self(np.linspace(lo_f, hi_f, 17)))):
            raise PreconditionError(f"{self.name}: evaluator is not finite on its domain")
        xs = a + (hi_f - a) * (0.1 + 0.8 * rng.random(points))
        for i, d in enumerate(self.derivatives, start=1):
            prev = self.derivative(i - 1)
            fd = _central_difference(prev, xs, 1, (lo_f, hi_f))
            exact = np.asarray(d(xs), dtype=float)
            scale = max(1.0, float(np.max(np.abs(exact))))
            if not np.allclose(exact, fd, rtol=rtol, atol=rtol * scale):
                raise PreconditionError(
                    f"{self.name}: derivative {i} disagrees with finite differences "
                    f"(max gap {float(np.max(np.abs(exact - fd)))!r})"
                )


def _central_difference(ev: Evaluator, t: np.ndarray, m: int, domain: tuple[float, float]) -> np.ndarray:
    """m-th derivative by central differences, h = eps^(1/(m+2))·max(1,|t|), 3-level Richardson."""
    t = np.asarray(t, dtype=float)
    h = _EPS ** (1.0 / (m + 2)) * np.maximum(1.0, np.abs(t))
    reach = max(2.0, m / 2.0) * h
    lo, hi = domain
    if np.any(t - reach < lo) or np.any(t + reach > hi):
        raise MissingDerivativeError(
            f"no finite-difference margin for order {m} inside [{lo!r}, {hi!r}]"
        )
    weights = [(-1) ** j * math.comb(m, j) for j in range(m + 1)]

    def diff(step: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(t)
        for j, w in enumerate(weights):
            acc = acc + w * np.asarray(ev(t + (m / 2.0 - j) * step), dtype=float)
        return acc / step ** m

    d1, d2, d4 = diff(h), diff(h / 2.0), diff(h / 4.0)
    r1 = (4.0 * d2 - d1) / 3.0
    r2 = (4.0 * d4 - d2) / 3.0
    return (16.0 * r2 - r1) / 15.0


# ---------------------------------------------------------------------------
# handle construction and algebra


def polynomial_handle(
    coefficients: Sequence[float],
    a: float = 0.0,
    domain: tuple[float, float] = (-1.0, 2.0),
    *,
    name: str = "poly",
) -> FnHandle:
    """Σ c_i (x - a)^i as an ANALYTIC handle."""
    poly = Polynomial([require_finite(c, "coefficient") for c in coefficients] or [0.0])

    def deriv(i: int) -> Evaluator:
        dp = poly.deriv(i) if i > 0 else poly
        return lambda x: dp(np.asarray(x, dtype=float) - a)

    return FnHandle(
        evaluator=deriv(0),
        smoothness_k=ANALYTIC,
        base_point=a,
        domain=domain,
        jet_rule=lambda i: float((poly.deriv(i) if i > 0 else poly)(0.0)),
        derivative_rule=deriv,
        name=name,
    )


def zero_handle(a: float = 0.0, domain: tuple[float, float] = (-1.0, 2.0)) -> FnHandle:
    return polynomial_handle([0.0], a, domain, name="0")


def derivative_handle(f: FnHandle, m: int) -> FnHandle:
    """f^(m) as a handle: closed-form evaluator when available, finite differences otherwise."""
    if m == 0:
        return f
    if f.form is not None:
        raise PreconditionError(f"{f.name}: derivative_handle needs a plain handle")
    ev = f.derivative(m)
    if ev is None:
        logger.debug("fd_fallback fn=%s order=%d", f.name, m)
        ev = lambda x, _f=f, _m=m: _central_difference(_f.evaluator, x, _m, _f.domain)  # noqa: E731
    beta = _regular_exponent(f.endpoint_exponent)
    if beta != 0.0:
        beta -= m
        if beta <= -1.0:
            raise DomainError(f"{f.name}: derivative {m} is not integrable at a")
    common = dict(
        evaluator=ev,
        base_point=f.base_point,
        domain=f.domain,
        derivative_rule=lambda i, _f=f, _m=m: _f.derivative(i + _m),
        endpoint_exponent=beta,
        name=f"{f.name}^({m})",
    )
    if f.is_analytic:
        return FnHandle(smoothness_k=ANALYTIC, jet_rule=lambda i, _f=f, _m=m: _f.jet_value(i + _m), **common)
    rest = f.smoothness_k - m
    if f.order_limit is not None:
        return FnHandle(smoothness_k=max(rest, 0), order_limit=f.order_limit - m, **common)
    if rest >= 0:
        return FnHandle(smoothness_k=rest, jet=tuple(f.jet_value(m + i) for i in range(rest + 1)), **common)
    # m = k + 1: exists almost everywhere, integrable, never differentiated again
    return FnHandle(smoothness_k=0, order_limit=0.0, **common)


def _form_of(f: FnHandle) -> RLForm:
    if f.form is not None:
        return f.form
    return RLForm(terms=SigmaSeq.zero(f.base_point), parts=((0.0, f),))


def _integrate_part(g: FnHandle, s: float, x: float, spec: QuadSpec) -> float:
    a = g.base_point
    beta = _regular_exponent(g.endpoint_exponent)
    if beta == 0.0:
        integrand = g.evaluator
    else:
        integrand = lambda t: np.asarray(g.evaluator(t), dtype=float) / (t - a) ** beta  # noqa: E731
    return jacobi_integral(integrand, a, x, s, beta, spec)


def _form_handle(
    form: RLForm, a: float, domain: tuple[float, float], *, limit: float, name: str, spec: QuadSpec
) -> FnHandle:
    def evaluate(x: np.ndarray) -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        out = np.asarray(sigma_eval(form.terms, arr), dtype=float) + np.zeros_like(arr)
        for s, g in form.parts:
            if s == 0.0:
                out = out + np.asarray(g.evaluator(arr), dtype=float)
                continue
            if np.any(arr < a):
                raise DomainError(f"{name}: differintegral is defined for x >= a={a!r} only")
            flat = np.array([_integrate_part(g, s, float(xi), spec) for xi in arr.ravel()])
            out = out + flat.reshape(arr.shape)
        return out

    return FnHandle(
        evaluator=evaluate,
        smoothness_k=0,
        base_point=a,
        domain=domain,
        name=name,
        order_limit=limit,
        form=form,
    )


def _caputo(g: FnHandle, p: float) -> RLForm:
    """D^p g (p > 0) for a plain handle, Caputo form."""
    if p >= g.limit:
        raise AdmissibilityError(f"{g.name}: order {p!r} needs p < {g.limit!r}")
    m = math.ceil(p)
    terms = []
    for i in range(m):
        c = g.jet_value(i)
        e = i - p
        if c != 0.0 and not is_annihilated(e):
            terms.append((e, c))
    gm = derivative_handle(g, m)
    return RLForm(
        terms=SigmaSeq.from_terms(g.base_point, terms),
        parts=((_snap(m - p), gm),),
    )


def rl_handle(f: FnHandle, p: float, spec: QuadSpec = DEFAULT_QUAD) -> FnHandle:
    """_aD_x^p f as a handle; p < 0 is the integral of order -p, p == 0 returns f."""
    p = _snap(require_finite(p, "p"))
    if p == 0.0:
        return f
    if p > 0 and p >= f.limit:
        raise AdmissibilityError(f"{f.name}: order {p!r} needs p < {f.limit!r}")
    form = _form_of(f)
    terms = drop_annihilated(sigma_shift(drop_annihilated(form.terms), p).at_rest())
    parts: list[tuple[float, FnHandle]] = []
    for s, g in form.parts:
        r = _snap(s - p)
        if r >= 0.0:
            parts.append((r, g))
            continue
        sub = _caputo(g, -r)
        terms = sigma_add(terms, sub.terms)
        parts.extend(sub.parts)
    return _form_handle(
        RLForm(terms=terms, parts=tuple(parts)),
        f.base_point,
        f.domain,
        limit=f.limit - p,
        name=f"D^{p:g} {f.name}",
        spec=spec,
    )


def add_handles(f: FnHandle, g: FnHandle, spec: QuadSpec = DEFAULT_QUAD) -> FnHandle:
    if f.base_point != g.base_point:
        raise BasePointMismatchError(f"base points differ: {f.base_point!r} != {g.base_point!r}")
    lo = max(f.domain[0], g.domain[0])
    hi = min(f.domain[1], g.domain[1])
    name = f"({f.name} + {g.name})"
    if f.form is not None or g.form is not None or f.order_limit is not None or g.order_limit is not None:
        ff, gf = _form_of(f), _form_of(g)
        form = RLForm(terms=sigma_add(ff.terms, gf.terms), parts=ff.parts + gf.parts)
        return _form_handle(form, f.base_point, (lo, hi), limit=min(f.limit, g.limit), name=name, spec=spec)

    def combined(i: int) -> Evaluator | None:
        df, dg = f.derivative(i), g.derivative(i)
        if df is None or dg is None:
            return None
        return lambda x: np.asarray(df(x), dtype=float) + np.asarray(dg(x), dtype=float)

    if f.is_analytic and g.is_analytic:
        k, jet, jet_rule = ANALYTIC, (), (lambda i: f.jet_value(i) + g.jet_value(i))
    else:
        k = min(v for v in (f.smoothness_k, g.smoothness_k) if v != ANALYTIC)
        jet, jet_rule = tuple(f.jet_value(i) + g.jet_value(i) for i in range(k + 1)), None
    return FnHandle(
        evaluator=combined(0),
        smoothness_k=k,
        base_point=f.base_point,
        domain=(lo, hi),
        jet=jet,
        jet_rule=jet_rule,
        derivative_rule=combined,
        endpoint_exponent=min(_regular_exponent(f.endpoint_exponent), _regular_exponent(g.endpoint_exponent)),
        name=name,
    )


def scale_handle(c: float, f: FnHandle, spec: QuadSpec = DEFAULT_QUAD) -> FnHandle:
    c = require_finite(c, "c")
    if c == 1.0:
        return f
    name = f"{c:g}·{f.name}"
    if f.form is not None:
        form = RLForm(
            terms=sigma_scale(c, f.form.terms),
            parts=tuple((s, scale_handle(c, g, spec)) for s, g in f.form.parts),
        )
        return _form_handle(form, f.base_point, f.domain, limit=f.limit, name=name, spec=spec)

    def scaled(i: int) -> Evaluator | None:
        d = f.derivative(i)
        if d is None:
            return None
        return lambda x: c * np.asarray(d(x), dtype=float)

    return FnHandle(
        evaluator=scaled(0),
        smoothness_k=f.smoothness_k,
        base_point=f.base_point,
        domain=f.domain,
        jet=tuple(c * v for v in f.jet),
        jet_rule=(lambda i: c * f.jet_value(i)) if f.jet_rule is not None else None,
        derivative_rule=scaled,
        endpoint_exponent=f.endpoint_exponent,
        name=name,
        order_limit=f.order_limit,
    )


def sigma_handle(s: SigmaSeq, domain: tuple[float, float], spec: QuadSpec = DEFAULT_QUAD) -> FnHandle:
    """Rσ as a handle: a polynomial when the support is nonnegative integers."""
    a = s.base_point
    terms = [(e, c) for e, c in s.terms if not is_annihilated(e)]
    if all(is_integer(e) for e, _ in terms):
        degree = int(max((e for e, _ in terms), default=0))
        coefficients = [0.0] * (degree + 1)
        for e, c in terms:
            coefficients[int(e)] = c * rgamma(e + 1.0)
        return polynomial_handle(coefficients, a, domain, name="Rσ")
    return _form_handle(
        RLForm(terms=SigmaSeq.from_terms(a, terms)), a, domain, limit=math.inf, name="Rσ", spec=spec
    )


# ---------------------------------------------------------------------------
# pointwise operators


def _check_point(f: FnHandle, x: float) -> float:
    x = require_finite(x, "x")
    lo, hi = f.domain
    if not (lo <= x <= hi):
        raise PreconditionError(f"{f.name}: x={x!r} outside domain [{lo!r}, {hi!r}]")
    return x


def rl_integral(f: FnHandle, q: float, x: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """(1/Γ(q)) ∫_a^x f(t)(x-t)^(q-1) dt."""
    q = require_finite(q, "q")
    if q <= 0:
        raise PreconditionError(f"integral order must be > 0, got {q!r}")
    x = _check_point(f, x)
    a = f.base_point
    if x < a:
        raise PreconditionError(f"{f.name}: x={x!r} below base point a={a!r}")
    if x == a:
        return 0.0
    if f.form is not None:
        return float(rl_handle(f, -q, spec)(x))
    return _integrate_part(f, q, x, spec)


def rl_derivative(f: FnHandle, p: float, x: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """_aD_x^p f at x. p < 0 integrates, p == 0 is f(x) exactly."""
    p = require_finite(p, "p")
    x = _check_point(f, x)
    if p == 0.0:
        return float(f(x))
    if p < 0:
        return rl_integral(f, -p, x, spec)
    if p >= f.limit:
        raise AdmissibilityError(f"{f.name}: order {p!r} needs p < {f.limit!r}")
    if x <= f.base_point:
        raise PreconditionError(f"{f.name}: x={x!r} must exceed a={f.base_point!r} for p > 0")
    if f.form is None and is_integer(p):
        direct = f.derivative(int(p))
        if direct is not None:
            return float(np.asarray(direct(np.asarray(x)), dtype=float))
    return float(rl_handle(f, p, spec)(x))


def rl_power_rule(mu: float, p: float, a: float, x: float) -> float:
    """_aD_x^p (x-a)^mu = Γ(mu+1)/Γ(mu-p+1)·(x-a)^(mu-p); 0 when mu-p is a negative integer."""
    mu, p, a, x = (require_finite(v, n) for v, n in ((mu, "mu"), (p, "p"), (a, "a"), (x, "x")))
    if mu <= -1:
        raise PreconditionError(f"power rule needs mu > -1, got {mu!r}")
    e = mu - p
    if x < a or (x == a and e <= 0):
        raise PreconditionError(f"power rule needs x > a (or x == a with mu - p > 0), got x={x!r}, a={a!r}")
    w = rgamma(e + 1.0)
    if w == 0.0 or x == a:
        return 0.0
    return gamma(mu + 1.0) * w * (x - a) ** e


def taylor_poly(f: FnHandle, order: int) -> SigmaSeq:
    """R⁻¹ of _aT(f) truncated at `order`; order -1 gives the empty sequence."""
    if isinstance(order, bool) or int(order) != order:
        raise PreconditionError(f"taylor order must be an integer, got {order!r}")
    order = int(order)
    if order < -1:
        raise PreconditionError(f"taylor order must be >= 0, got {order!r}")
    if not f.is_analytic and order > f.smoothness_k:
        raise PreconditionError(f"{f.name}: taylor order {order} exceeds class C^{f.smoothness_k}")
    if order == -1:
        return SigmaSeq.zero(f.base_point)
    return sigma_from_jet([f.jet_value(i) for i in range(order + 1)], f.base_point)

# -*- coding: utf-8 -*-

"""Elements of ℝ_ω as finitely supported exponent -> coefficient maps.

A SigmaSeq σ stands for the generalized series

    Rσ(x) = Σ σ(e) / Γ(e + 1) · (x - a)^e

over its (finite) support. D^p acts as a shift of the support; R is sigma_eval;
R⁻¹ of a Taylor jet is sigma_from_jet.

Notes
- Shift direction: exponents decrease by p under D^p (output(i) = input(i + p)),
  the direction in which Σ D^pσ(i)/Γ(i+1)(x-a)^i equals d^p/dx^p of the series.
  `literal=True` gives the opposite, index-formula direction.
- Shifts are recorded, not applied: the effective offset is the exactly rounded
  sum (math.fsum) of every applied shift, so shift results never depend on the
  order the shifts were applied in and a shift followed by its inverse restores
  the exponents bit for bit.
- Exponents merge under exact float comparison; no epsilon.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from cdiff.errors import BasePointMismatchError, DomainError, PreconditionError
from cdiff.special import require_finite, rgamma

logger = logging.getLogger(__name__)


def is_integer(e: float) -> bool:
    return e == math.floor(e)


def is_annihilated(e: float) -> bool:
    """A negative-integer exponent: 1/Γ(e+1) = 0, the term is identically zero."""
    return e < 0 and is_integer(e)


@dataclass(frozen=True, eq=False)
class SigmaSeq:
    base_point: float
    exponents: tuple[float, ...] = ()
    coefficients: tuple[float, ...] = ()
    shifts: tuple[float, ...] = ()

    def __post_init__(self):
        require_finite(self.base_point, "base_point")
        if len(self.exponents) != len(self.coefficients):
            raise PreconditionError("exponents and coefficients differ in length")
        for e, c in zip(self.exponents, self.coefficients):
            require_finite(e, "exponent")
            require_finite(c, "coefficient")
            if c == 0.0:
                raise PreconditionError("zero coefficient in support (normal form)")
        if any(b <= a for a, b in zip(self.exponents, self.exponents[1:])):
            raise PreconditionError("exponents must be strictly increasing")
        for s in self.shifts:
            require_finite(s, "shift")

    @classmethod
    def from_terms(cls, base_point: float, terms: Iterable[tuple[float, float]]) -> "SigmaSeq":
        """Normal form from arbitrary (exponent, coefficient) pairs: merge, drop zeros, sort."""
        merged: dict[float, float] = {}
        for e, c in terms:
            e = float(e) + 0.0  # -0.0 -> 0.0
            merged[e] = merged.get(e, 0.0) + float(c)
        kept = sorted((e, c) for e, c in merged.items() if c != 0.0)
        return cls(
            base_point=float(base_point),
            exponents=tuple(e for e, _ in kept),
            coefficients=tuple(c for _, c in kept),
        )

    @classmethod
    def zero(cls, base_point: float = 0.0) -> "SigmaSeq":
        return cls(base_point=float(base_point))

    @property
    def offset(self) -> float:
        return math.fsum(self.shifts) if self.shifts else 0.0

    @property
    def terms(self) -> tuple[tuple[float, float], ...]:
        off = self.offset
        return tuple((e - off + 0.0, c) for e, c in zip(self.exponents, self.coefficients))

    @property
    def is_zero(self) -> bool:
        return not self.exponents

    def __len__(self) -> int:
        return len(self.exponents)

    def __call__(self, e: float) -> float:
        """σ(e): coefficient at exponent e, zero off the support."""
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0.0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SigmaSeq):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        return self.base_point == other.base_point and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(("sigma", self.base_point if not self.is_zero else None, self.terms))

    def __repr__(self) -> str:
        return f"SigmaSeq(a={self.base_point!r}, terms={list(self.terms)!r})"

    def at_rest(self) -> "SigmaSeq":
        """Same element with the offset folded into the stored exponents."""
        if not self.shifts:
            return self
        return SigmaSeq.from_terms(self.base_point, self.terms)

    def to_payload(self) -> dict[str, Any]:
        return {"a": self.base_point, "terms": [[e, c] for e, c in self.terms]}

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "SigmaSeq":
        return cls.from_terms(payload.get("a", 0.0), [(e, c) for e, c in payload.get("terms") or []])


def sigma_shift(s: SigmaSeq, p: float, *, literal: bool = False) -> SigmaSeq:
    """D^p on ℝ_ω: every support exponent e becomes e - p (e + p when literal)."""
    p = require_finite(p, "p")
    if p == 0.0:
        return s
    return SigmaSeq(
        base_point=s.base_point,
        exponents=s.exponents,
        coefficients=s.coefficients,
        shifts=s.shifts + ((-p if literal else p),),
    )


def sigma_eval(s: SigmaSeq, x: float | np.ndarray) -> float | np.ndarray:
    """R σ at x (scalar or array)."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("x must be finite")
    dx = arr - s.base_point
    out = np.zeros_like(dx)
    for e, c in s.terms:
        w = rgamma(e + 1.0)
        if w == 0.0:
            continue
        if not is_integer(e) and np.any(dx < 0):
            raise DomainError(f"exponent {e!r} is not defined for x < a={s.base_point!r}")
        if e < 0 and np.any(dx == 0):
            raise DomainError(f"exponent {e!r} is unbounded at x = a={s.base_point!r}")
        out = out + c * w * np.power(dx, e)
    if arr.ndim == 0:
        return float(out)
    return out


def sigma_from_jet(derivs: Sequence[float], a: float) -> SigmaSeq:
    """R⁻¹ of the Taylor polynomial with f^(i)(a) = derivs[i]; σ(i) = derivs[i]."""
    if len(derivs) == 0:
        raise PreconditionError("derivs must be nonempty")
    vals = [require_finite(d, f"derivs[{i}]") for i, d in enumerate(derivs)]
    return SigmaSeq.from_terms(a, ((float(i), d) for i, d in enumerate(vals)))


def _common_base(s: SigmaSeq, t: SigmaSeq) -> float:
    if s.is_zero:
        return t.base_point
    if t.is_zero:
        return s.base_point
    if s.base_point != t.base_point:
        raise BasePointMismatchError(f"base points differ: {s.base_point!r} != {t.base_point!r}")
    return s.base_point


def sigma_add(s: SigmaSeq, t: SigmaSeq) -> SigmaSeq:
    base = _common_base(s, t)
    return SigmaSeq.from_terms(base, list(s.terms) + list(t.terms))


def sigma_scale(c: float, s: SigmaSeq) -> SigmaSeq:
    c = require_finite(c, "c")
    if c == 0.0 or s.is_zero:
        return SigmaSeq.zero(s.base_point)
    kept = [(e, c * v) for e, v in zip(s.exponents, s.coefficients) if c * v != 0.0]
    return SigmaSeq(
        base_point=s.base_point,
        exponents=tuple(e for e, _ in kept),
        coefficients=tuple(v for _, v in kept),
        shifts=s.shifts,
    )


def drop_annihilated(s: SigmaSeq) -> SigmaSeq:
    """The R-L view of σ: terms with negative-integer exponents are the zero function."""
    terms = [(e, c) for e, c in s.terms if not is_annihilated(e)]
    if len(terms) == len(s):
        return s
    return SigmaSeq.from_terms(s.base_point, terms)

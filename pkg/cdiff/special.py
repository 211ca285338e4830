# -*- coding: utf-8 -*-

"""Gamma-function machinery with explicit behaviour at the poles of Γ.

- gamma(x): Γ(x); DomainError at non-positive integers, GammaOverflowError when
  the value leaves the double range.
- rgamma(x): 1/Γ(x); total on finite reals and exactly 0.0 at the poles, which
  is what makes power-rule terms with negative-integer exponents vanish.

Both wrap scipy.special (Cephes). rgamma near a pole is evaluated by scipy's
reflection form, so it stays accurate arbitrarily close to -n.
"""

from __future__ import annotations

import logging
import math

from scipy import special as _sp

from cdiff.errors import DomainError, GammaOverflowError

logger = logging.getLogger(__name__)


def require_finite(x: float, name: str = "x") -> float:
    v = float(x)
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")
    return v


def is_pole(x: float) -> bool:
    """True when x is a non-positive integer (a pole of Γ)."""
    return x <= 0.0 and x == math.floor(x)


def gamma(x: float) -> float:
    v = require_finite(x)
    if is_pole(v):
        raise DomainError(f"gamma has a pole at x={v!r}")
    out = float(_sp.gamma(v))
    if not math.isfinite(out):
        logger.debug("gamma_overflow x=%r", v)
        raise GammaOverflowError(f"|gamma({v!r})| exceeds the double range")
    return out


def rgamma(x: float) -> float:
    v = require_finite(x)
    if is_pole(v):
        return 0.0
    return float(_sp.rgamma(v))

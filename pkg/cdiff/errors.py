# -*- coding: utf-8 -*-

"""Exception types raised across cdiff.

The CLI maps these onto exit codes (see cdiff.cli); library callers can catch
CdiffError for everything raised on purpose.
"""

from __future__ import annotations


class CdiffError(Exception):
    """Base class for every error cdiff raises on purpose."""


class DomainError(CdiffError, ValueError):
    """Argument outside the mathematical domain (pole, non-finite input, x < a...)."""


class GammaOverflowError(CdiffError, OverflowError):
    pass


class PreconditionError(CdiffError, ValueError):
    pass


class AdmissibilityError(PreconditionError):
    """Requested order is too large for the remaining smoothness (p >= k + 1)."""


class MissingDerivativeError(CdiffError):
    pass


class BasePointMismatchError(CdiffError, ValueError):
    pass


class CatalogError(CdiffError):
    pass


class NonConvergenceError(CdiffError, ArithmeticError):
    """Adaptive quadrature stopped refining without meeting its tolerance."""

    def __init__(self, message: str, *, previous: float, last: float, nodes: int):
        super().__init__(f"{message} (previous={previous!r}, last={last!r}, nodes={nodes})")
        self.previous = previous
        self.last = last
        self.nodes = nodes


class SpecError(CdiffError, ValueError):
    """Bad FnSpec / grid / flag input. `where` names the field or line at fault."""

    def __init__(self, message: str, *, where: str | None = None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where

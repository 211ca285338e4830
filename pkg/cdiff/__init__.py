"""Riemann–Liouville differintegrals and a commutative derivative on (f_a, σ) pairs."""

from cdiff.pairspace import DiffPair, decompose, pair_add, pair_derivative, pair_scale, reconstruct
from cdiff.quadrature import QuadSpec
from cdiff.rlnum import ANALYTIC, FnHandle, rl_derivative, rl_handle, rl_integral, rl_power_rule, taylor_poly
from cdiff.sigma import SigmaSeq, sigma_eval, sigma_from_jet, sigma_shift
from cdiff.special import gamma, rgamma

__all__ = [
    "ANALYTIC",
    "DiffPair",
    "FnHandle",
    "QuadSpec",
    "SigmaSeq",
    "decompose",
    "gamma",
    "pair_add",
    "pair_derivative",
    "pair_scale",
    "reconstruct",
    "rgamma",
    "rl_derivative",
    "rl_handle",
    "rl_integral",
    "rl_power_rule",
    "sigma_eval",
    "sigma_from_jet",
    "sigma_shift",
    "taylor_poly",
]

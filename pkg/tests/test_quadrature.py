import math

import numpy as np
import pytest

from cdiff.errors import DomainError, NonConvergenceError, PreconditionError
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec, jacobi_estimate, jacobi_integral, jacobi_rule
from cdiff.catalog import power_entry
from cdiff.rlnum import FnHandle, rl_integral, rl_power_rule
from cdiff.special import gamma


def one(t):
    return np.ones_like(t)


def test_rule_maps_onto_unit_interval():
    u, w = jacobi_rule(16, -0.5, 0.0)
    assert np.all((u > 0) & (u < 1))
    # ∫_0^1 (1-u)^(-1/2) du = 2
    assert w.sum() == pytest.approx(2.0, rel=1e-13)
    # ∫_0^1 (1-u)^(-1/2) u^(1/2) du = B(1/2, 3/2) = π/2
    _, w2 = jacobi_rule(16, -0.5, 0.5)
    assert w2.sum() == pytest.approx(math.pi / 2.0, rel=1e-13)


def test_rule_rejects_non_integrable_weights():
    with pytest.raises(DomainError):
        jacobi_rule(8, -1.0, 0.0)


def test_constant_integrals():
    assert jacobi_integral(one, 0.0, 3.0, 1.0, 0.0, DEFAULT_QUAD) == pytest.approx(3.0, rel=1e-14)
    assert jacobi_integral(one, 0.0, 1.0, 0.5, 0.0, DEFAULT_QUAD) == pytest.approx(1.1283791670955126, rel=1e-13)
    assert jacobi_integral(lambda t: t, 0.0, 2.0, 1.0, 0.0, DEFAULT_QUAD) == pytest.approx(2.0, rel=1e-14)


def test_endpoint_weight_absorbs_power():
    # I^0.5 [t^0.5](x) = Γ(1.5) x with g = 1, β = 0.5
    x = 2.0
    assert jacobi_integral(one, 0.0, x, 0.5, 0.5, DEFAULT_QUAD) == pytest.approx(gamma(1.5) * x, rel=1e-13)


def test_base_point_and_preconditions():
    assert jacobi_integral(one, 1.0, 1.0, 0.5, 0.0, DEFAULT_QUAD) == 0.0
    with pytest.raises(PreconditionError):
        jacobi_integral(one, 0.0, 1.0, 0.0, 0.0, DEFAULT_QUAD)
    with pytest.raises(DomainError):
        jacobi_integral(one, 0.0, -1.0, 0.5, 0.0, DEFAULT_QUAD)


def test_non_finite_integrand():
    with pytest.raises(DomainError):
        jacobi_estimate(lambda t: np.full_like(t, np.nan), 0.0, 1.0, 0.5, 0.0, 8)


def test_stalled_refinement_reports_estimates():
    spec = QuadSpec(nodes=2, adaptive_tol=1e-14, max_refinements=1)
    with pytest.raises(NonConvergenceError) as info:
        jacobi_integral(lambda t: np.sin(40.0 * t), 0.0, 1.0, 0.5, 0.0, spec)
    err = info.value
    assert err.nodes == 4
    assert math.isfinite(err.previous) and math.isfinite(err.last)
    assert err.previous != err.last


def test_doubling_never_increases_error_on_unweighted_power():
    # t^0.5 integrated with β declared 0: algebraic, not spectral, convergence
    exact = gamma(1.5) / gamma(2.0)
    errors = [abs(jacobi_estimate(np.sqrt, 0.0, 1.0, 0.5, 0.0, n) - exact) for n in (4, 8, 16, 32, 64)]
    for coarse, fine in zip(errors, errors[1:]):
        assert fine <= coarse + 1e-15
    assert errors[-1] < errors[0]


def test_quadspec_validation():
    with pytest.raises(PreconditionError):
        QuadSpec(nodes=1)
    with pytest.raises(PreconditionError):
        QuadSpec(adaptive_tol=0.0)
    assert DEFAULT_QUAD.with_nodes(512).nodes == 512


def _plain_power(mu):
    # (x - a)^mu with no endpoint exponent declared: the rule sees a non-smooth integrand
    k = math.floor(mu)
    return FnHandle(
        evaluator=lambda t: np.power(np.maximum(np.asarray(t, dtype=float), 0.0), mu),
        smoothness_k=k,
        base_point=0.0,
        domain=(0.0, 3.0),
        jet=(0.0,) * (k + 1),
        name=f"plain_pow_{mu:g}",
    )


@pytest.mark.parametrize("mu", [0.5, 1.5, 2.5])
@pytest.mark.parametrize("q", [0.5, 1.0, 1.7])
@pytest.mark.parametrize("declared", [True, False])
def test_doubling_nodes_never_increases_error_against_the_power_rule(mu, q, declared):
    f = power_entry(mu).handle if declared else _plain_power(mu)
    x = 2.0
    exact = rl_power_rule(mu, -q, 0.0, x)
    # adaptive_tol=1 accepts the first doubled estimate: one fixed rule per node count
    errors = [
        abs(rl_integral(f, q, x, QuadSpec(nodes=n, adaptive_tol=1.0, max_refinements=1)) - exact)
        for n in (4, 8, 16, 32, 64)
    ]
    for coarse, fine in zip(errors, errors[1:]):
        assert fine <= coarse + 1e-13 * abs(exact)
    if declared:
        assert errors[-1] <= 1e-13 * abs(exact)

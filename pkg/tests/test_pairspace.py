import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdiff.catalog import lookup
from cdiff.errors import AdmissibilityError, BasePointMismatchError, PreconditionError
from cdiff.pairspace import DiffPair, decompose, pair_add, pair_derivative, pair_scale, reconstruct
from cdiff.rlnum import ANALYTIC, polynomial_handle, zero_handle
from cdiff.settings import SERIES_DEGREE, Conventions
from cdiff.sigma import SigmaSeq

XS = np.linspace(-1.0, 2.0, 31)
XS_ABOVE = np.linspace(0.1, 2.0, 20)


def handle(entry_id):
    return lookup(entry_id).handle


# ---------------------------------------------------------------------------
# decompose / reconstruct


def test_decompose_zero():
    pair = decompose(zero_handle())
    assert pair.sigma.is_zero
    assert pair.class_k == ANALYTIC
    np.testing.assert_array_equal(pair.fa(XS), np.zeros_like(XS))


def test_decompose_kink_without_jet():
    f = handle("abs1")
    pair = decompose(f, 0)
    assert pair.sigma.is_zero
    assert pair.fa is f
    assert pair.class_k == 1


def test_decompose_affine_kink():
    f = handle("abs1_affine")
    pair = decompose(f, 0)
    assert pair.sigma.terms == ((0.0, 1.0),)
    np.testing.assert_allclose(pair.fa(XS), XS + XS * np.abs(XS), rtol=0, atol=1e-14)


def test_default_truncation_is_k_minus_one():
    assert decompose(handle("abs2")).sigma.is_zero
    assert decompose(handle("abs1_affine")).sigma.terms == ((0.0, 1.0),)


def test_literal_truncation_keeps_kth_term():
    f = handle("abs1_affine")
    pair = decompose(f, conventions=Conventions(taylor_order="k"))
    assert pair.sigma.terms == ((0.0, 1.0), (1.0, 1.0))
    np.testing.assert_allclose(reconstruct(pair)(XS) - f(XS), XS, atol=1e-14)


def test_decompose_rejects_other_truncations():
    with pytest.raises(PreconditionError):
        decompose(handle("abs1"), 3)
    with pytest.raises(PreconditionError):
        decompose(polynomial_handle([1.0]), -1)


@pytest.mark.parametrize("entry_id", ["abs1", "abs2", "abs1_affine", "poly2", "poly5"])
def test_round_trip_is_exact_for_kinks_and_polynomials(entry_id):
    f = handle(entry_id)
    np.testing.assert_allclose(reconstruct(decompose(f))(XS), f(XS), rtol=0, atol=1e-12)


def test_analytic_round_trip_truncates_the_series():
    f = handle("sin")
    pair = decompose(f)
    assert pair.fa(1.3) == 0.0
    assert max(e for e, _ in pair.sigma.terms) <= SERIES_DEGREE
    np.testing.assert_allclose(reconstruct(pair)(XS), np.sin(XS), rtol=0, atol=1e-9)


def test_reconstruct_constant():
    pair = DiffPair(fa=zero_handle(), sigma=SigmaSeq.from_terms(0.0, [(0.0, 2.5)]), class_k=ANALYTIC)
    np.testing.assert_allclose(reconstruct(pair)(XS), 2.5)


def test_reconstruct_drops_annihilated_terms():
    f = handle("abs1")
    pair = DiffPair(fa=f, sigma=SigmaSeq.from_terms(0.0, [(-1.0, 1.0)]), class_k=1)
    np.testing.assert_array_equal(reconstruct(pair)(XS), f(XS))


def test_pair_rejects_mixed_base_points():
    with pytest.raises(BasePointMismatchError):
        DiffPair(fa=handle("abs1"), sigma=SigmaSeq.from_terms(1.0, [(0.0, 1.0)]), class_k=1)


# ---------------------------------------------------------------------------
# derivative


def test_identity_order_returns_the_pair():
    pair = decompose(handle("abs1_affine"))
    assert pair_derivative(pair, 0.0) is pair


def test_first_derivative_matches_classical():
    pair = DiffPair(fa=handle("abs1"), sigma=SigmaSeq.from_terms(0.0, [(0.0, 1.0)]), class_k=1)
    d = pair_derivative(pair, 1.0)
    assert d.sigma.terms == ((-1.0, 1.0),)
    assert d.orders == (1.0,)
    assert d.fa(2.0) == pytest.approx(4.0)
    assert reconstruct(d)(2.0) == pytest.approx(4.0)


def test_two_half_steps_equal_one_step():
    pair = decompose(handle("abs1"))
    halves = pair_derivative(pair_derivative(pair, 0.5), 0.5)
    once = pair_derivative(pair, 1.0)
    assert halves.accumulated == once.accumulated == 1.0
    assert reconstruct(halves)(1.0) == pytest.approx(2.0, abs=1e-6)
    assert reconstruct(once)(1.0) == pytest.approx(2.0, abs=1e-6)


def test_orders_commute_on_sigma_exactly():
    pair = decompose(handle("abs1_affine"))
    pq = pair_derivative(pair_derivative(pair, 0.3), 0.7)
    qp = pair_derivative(pair_derivative(pair, 0.7), 0.3)
    assert pq.sigma == qp.sigma
    assert pq.accumulated == qp.accumulated
    for x in (0.5, 1.0, 1.5):
        assert pq.fa(x) == pytest.approx(qp.fa(x), abs=1e-8)


def test_literal_shift_moves_exponents_up():
    pair = decompose(handle("abs1_affine"))
    d = pair_derivative(pair, 0.5, conventions=Conventions(shift="literal"))
    assert d.sigma.terms == ((0.5, 1.0),)


def test_running_total_admissibility():
    pair = decompose(handle("abs1"))
    with pytest.raises(AdmissibilityError):
        pair_derivative(pair, 2.0)
    once = pair_derivative(pair, 1.0)
    with pytest.raises(AdmissibilityError):
        pair_derivative(once, 1.0)
    assert pair_derivative(once, 0.5).accumulated == 1.5
    with pytest.raises(AdmissibilityError):
        pair_derivative(pair_derivative(pair, 1.5), 0.5)


def test_analytic_pairs_have_no_budget():
    pair = decompose(handle("poly3"))
    assert pair.budget == float("inf")
    d = pair_derivative(pair_derivative(pair, 2.0), 1.5)
    assert d.accumulated == 3.5


# ---------------------------------------------------------------------------
# vector space


def test_additive_inverse():
    pair = decompose(handle("abs1_affine"))
    zero = pair_add(pair, pair_scale(-1.0, pair))
    assert zero.sigma.is_zero
    np.testing.assert_allclose(zero.fa(XS), 0.0, atol=1e-12)


def test_scalar_identity():
    pair = decompose(handle("abs2"))
    assert pair_scale(1.0, pair) is pair


def test_sum_keeps_the_tighter_budget():
    kinked = pair_derivative(decompose(handle("abs1")), 0.5)
    smooth = decompose(handle("poly2"))
    total = pair_add(smooth, kinked)
    assert total.class_k == 1
    assert total.orders == (0.5,)


def test_payload_shape():
    pair = decompose(handle("abs1_affine"))
    payload = pair.to_payload([0.0, 1.0])
    assert payload["a"] == 0.0
    assert payload["class_k"] == 1
    assert payload["sigma"] == [[0.0, 1.0]]
    assert payload["fa"]["preview"] == [[0.0, 0.0], [1.0, 2.0]]


PAIR_IDS = st.sampled_from(["abs1", "abs2", "abs1_affine", "poly2", "poly3", "poly5"])
SCALARS = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(PAIR_IDS, PAIR_IDS)
def test_addition_commutes(f_id, g_id):
    p, q = decompose(handle(f_id)), decompose(handle(g_id))
    pq, qp = pair_add(p, q), pair_add(q, p)
    assert pq.sigma == qp.sigma
    np.testing.assert_allclose(pq.fa(XS), qp.fa(XS), rtol=0, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(PAIR_IDS, PAIR_IDS, SCALARS)
def test_scaling_distributes(f_id, g_id, c):
    p, q = decompose(handle(f_id)), decompose(handle(g_id))
    left = pair_scale(c, pair_add(p, q))
    right = pair_add(pair_scale(c, p), pair_scale(c, q))
    np.testing.assert_allclose(reconstruct(left)(XS), reconstruct(right)(XS), rtol=1e-12, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(PAIR_IDS, PAIR_IDS, SCALARS)
def test_reconstruct_is_linear(f_id, g_id, c):
    f, g = handle(f_id), handle(g_id)
    combined = pair_add(decompose(f), pair_scale(c, decompose(g)))
    np.testing.assert_allclose(reconstruct(combined)(XS), f(XS) + c * g(XS), rtol=1e-12, atol=1e-11)

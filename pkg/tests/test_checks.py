import numpy as np
import pytest

from cdiff.catalog import lookup, power_entry
from cdiff.checks import (
    Grid,
    check_commute,
    check_composition,
    check_defect,
    check_homomorphism,
    check_parallel,
    check_reconstruction,
    check_remainder_identity,
)
from cdiff.checks.report import compare
from cdiff.errors import AdmissibilityError, BasePointMismatchError, PreconditionError
from cdiff.settings import Conventions

ABOVE = Grid(lo=0.02, hi=2.0, n=100)


# ---------------------------------------------------------------------------
# reconstruction


def test_reconstruction_kink():
    report = check_reconstruction(lookup("abs1"), 0, tol=1e-9)
    assert report.passed
    assert report.grid.to_payload() == {"lo": -1.0, "hi": 2.0, "n": 101}
    assert report.info["kth_term_max"] == 0.0


def test_reconstruction_polynomial():
    report = check_reconstruction(lookup("poly3"), tol=1e-9)
    assert report.passed
    assert report.convention["taylor_order"] == 16


def test_reconstruction_literal_truncation_leaves_the_kth_term():
    report = check_reconstruction(lookup("abs1_affine"), conventions=Conventions(taylor_order="k"))
    assert report.verdict == "FAIL"
    assert report.max_abs_error == pytest.approx(2.0, rel=1e-12)
    assert report.info["kth_term_max"] == pytest.approx(2.0)
    assert report.convention["taylor_order"] == 1

    plain = check_reconstruction(lookup("abs1"), conventions=Conventions(taylor_order="k"))
    assert plain.passed


# ---------------------------------------------------------------------------
# parallel


@pytest.mark.parametrize(
    "entry_id, p, tol",
    [("poly3", 1.0, 1e-8), ("pow_1.5", 0.5, 1e-6), ("abs1", 0.0, 1e-12), ("abs2", 1.5, 1e-6), ("sin", 0.5, 1e-6)],
)
def test_parallel(entry_id, p, tol):
    report = check_parallel(lookup(entry_id), p, grid=ABOVE, tol=tol)
    assert report.passed, report.to_payload()


def test_parallel_rejects_inadmissible_orders():
    with pytest.raises(AdmissibilityError):
        check_parallel(lookup("pow_1.5"), 2.4)


def test_parallel_needs_points_above_the_base():
    with pytest.raises(PreconditionError):
        check_parallel(lookup("abs1"), 0.5, grid=Grid(lo=-1.0, hi=0.0, n=5))


# ---------------------------------------------------------------------------
# commute / composition


@pytest.mark.parametrize(
    "entry_id, p, q",
    [("abs1", 0.5, 0.5), ("pow_2.5", 1.0, 0.5), ("abs1", 0.0, 0.7), ("abs1_affine", 0.3, 0.7), ("poly5", 1.5, 2.0)],
)
def test_commute(entry_id, p, q):
    report = check_commute(lookup(entry_id), p, q, grid=ABOVE)
    assert report.passed, report.to_payload()
    assert report.sigma_equal is True


@pytest.mark.parametrize(
    "entry_id, p, q",
    [("poly3", 1.0, 1.0), ("pow_1.5", 0.3, 0.7), ("abs1", 0.5, 0.5), ("abs2", 1.0, 0.5)],
)
def test_composition(entry_id, p, q):
    report = check_composition(lookup(entry_id), p, q, grid=ABOVE)
    assert report.passed, report.to_payload()


def test_composition_reports_the_dropped_taylor_image():
    kinked = check_composition(lookup("abs1"), 0.5, 0.5, grid=ABOVE)
    assert kinked.info["dropped_term_max"] == 0.0

    affine = check_composition(lookup("abs1_affine"), 0.3, 0.4, grid=ABOVE)
    assert affine.passed
    assert affine.info["dropped_term_max"] > 1.0


def test_composition_checks_the_total_order():
    with pytest.raises(AdmissibilityError):
        check_composition(lookup("abs1"), 1.0, 1.0)


# ---------------------------------------------------------------------------
# remainder / defect


@pytest.mark.parametrize("entry_id", ["abs1", "abs2", "abs1_affine", "poly3", "pow_2.5"])
def test_remainder_identity(entry_id):
    report = check_remainder_identity(lookup(entry_id), grid=ABOVE)
    assert report.passed, report.to_payload()
    assert report.tol == 1e-7


@pytest.mark.parametrize("entry_id", ["sin", "pow_0.5"])
def test_remainder_needs_a_class(entry_id):
    with pytest.raises(PreconditionError):
        check_remainder_identity(lookup(entry_id))


def test_defect_on_a_kink_with_jet():
    report = check_defect(lookup("abs1_affine"), 0.5, grid=ABOVE)
    assert report.passed, report.to_payload()
    assert report.p == 1.0
    assert report.info["defect_max"] == pytest.approx(0.02 ** -0.5 / np.sqrt(np.pi), rel=1e-12)
    assert report.info["pair_residual"] <= 1e-6


def test_defect_vanishes_without_jet():
    report = check_defect(lookup("abs1"), grid=ABOVE)
    assert report.passed
    assert report.q == 0.5
    assert report.info["defect_max"] == 0.0


def test_defect_preconditions():
    with pytest.raises(PreconditionError):
        check_defect(lookup("abs1"), 0.0)
    with pytest.raises(PreconditionError):
        check_defect(lookup("sin"))


# ---------------------------------------------------------------------------
# homomorphism


def test_homomorphism():
    report = check_homomorphism(lookup("abs1"), lookup("abs1_affine"), 2.0)
    assert report.passed, report.to_payload()
    assert report.fn == "abs1+2*abs1_affine"
    assert report.tol == 1e-9


def test_homomorphism_mixes_classes():
    assert check_homomorphism(lookup("sin"), lookup("abs2"), -0.5).passed


def test_homomorphism_needs_one_base_point():
    with pytest.raises(BasePointMismatchError):
        check_homomorphism(lookup("abs1"), power_entry(0.5, a=1.0))


# ---------------------------------------------------------------------------
# reports


def test_verdict_is_purely_numeric():
    xs = np.array([0.0, 1.0])
    at_tol = compare("parallel", "f", xs, np.array([1.0, 1.0]), np.array([1.0, 1.5]), tol=0.5,
                     grid=Grid.of_points(xs), convention={})
    assert at_tol.verdict == "PASS"
    nan = compare("parallel", "f", xs, np.array([np.nan, 1.0]), np.array([1.0, 1.0]), tol=1e9,
                  grid=Grid.of_points(xs), convention={})
    assert nan.verdict == "FAIL"
    assert nan.max_abs_error == float("inf")
    assert nan.worst[0][0] == 0.0


def test_reports_are_reproducible():
    first = check_commute(lookup("abs1_affine"), 0.3, 0.7).to_payload()
    second = check_commute(lookup("abs1_affine"), 0.3, 0.7).to_payload()
    assert first == second
    assert len(first["worst"]) == 5

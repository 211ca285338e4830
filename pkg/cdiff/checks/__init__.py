from cdiff.checks.commute import check_commute
from cdiff.checks.common import Grid
from cdiff.checks.composition import check_composition
from cdiff.checks.defect import check_defect
from cdiff.checks.homomorphism import check_homomorphism
from cdiff.checks.parallel import check_parallel
from cdiff.checks.reconstruction import check_reconstruction
from cdiff.checks.remainder import check_remainder_identity
from cdiff.checks.report import CheckReport

__all__ = [
    "CheckReport",
    "Grid",
    "check_commute",
    "check_composition",
    "check_defect",
    "check_homomorphism",
    "check_parallel",
    "check_reconstruction",
    "check_remainder_identity",
]

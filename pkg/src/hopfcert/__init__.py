"""Exact certification engine for FRT bialgebras, Nichols algebras and their antipodes."""

from .bialgebra import PresentedBialgebra, dvl_bialgebra, frt_bialgebra, universal_bialgebra
from .braiding import BilinearForm, Braiding, check_braid, check_rigid, scale
from .freealg import Alphabet, NcPoly, RewriteSystem, complete, normal_form
from .nichols import NicholsData, NotFiniteWithinBound, nichols_compute, pairing_data
from .report import CertificationReport, Stage
from .scalars import FieldScalar, FieldSpec

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BilinearForm",
    "Braiding",
    "CertificationReport",
    "FieldScalar",
    "FieldSpec",
    "NcPoly",
    "NicholsData",
    "NotFiniteWithinBound",
    "PresentedBialgebra",
    "RewriteSystem",
    "Stage",
    "check_braid",
    "check_rigid",
    "complete",
    "dvl_bialgebra",
    "frt_bialgebra",
    "nichols_compute",
    "normal_form",
    "pairing_data",
    "scale",
    "universal_bialgebra",
]

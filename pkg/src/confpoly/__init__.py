"""Configuration polynomials over the rationals.

Exact linear algebra, sparse polynomials, Hadamard powers of configurations,
linear contact equivalence with checkable certificates, classification in
rank <= 3, and a small Groebner-basis engine for ideals of minors.
"""

from . import classify
from .classify import ClassLabel, conic_chain_certs, extremal_class, run_sweep
from .config import (Configuration, HadamardProfile, MatroidView, config_from_columns, extend_by_coloop,
                     hadamard_dims, hadamard_power, hadamard_product, is_connected, matroid, restrict)
from .configpoly import (GraphSpec, SymbolicForm, configuration_form, incidence_configuration, kirchhoff,
                         matroid_polynomial, psi_basis_expansion, psi_det)
from .equivalence import (ContactCert, ReductionReport, check_cert, compose_certs, invert_cert,
                          reduce_variables, try_drop_variable)
from .errors import ConfpolyError
from .exactalg import RatMatrix, det, invert, kernel_basis, rank, rref
from .family import FamilyParams, inversion_cert, lemma54_cert, prop53_evidence, psi_m, q_m, tower_report
from .ideals import Ideal, groebner, ideal_equal, intersect, normal_form as ideal_normal_form
from .ideals import separating_invariant, submaximal_minors_ideal
from .polyring import Poly, VarSet, det_poly, minors, poly_from_dict, substitute_linear

__version__ = "0.1.0"

__all__ = [
    "classify", "ClassLabel", "conic_chain_certs", "extremal_class", "run_sweep",
    "Configuration", "HadamardProfile", "MatroidView", "config_from_columns", "extend_by_coloop",
    "hadamard_dims", "hadamard_power", "hadamard_product", "is_connected", "matroid", "restrict",
    "GraphSpec", "SymbolicForm", "configuration_form", "incidence_configuration", "kirchhoff",
    "matroid_polynomial", "psi_basis_expansion", "psi_det",
    "ContactCert", "ReductionReport", "check_cert", "compose_certs", "invert_cert",
    "reduce_variables", "try_drop_variable",
    "ConfpolyError",
    "RatMatrix", "det", "invert", "kernel_basis", "rank", "rref",
    "FamilyParams", "inversion_cert", "lemma54_cert", "prop53_evidence", "psi_m", "q_m", "tower_report",
    "Ideal", "groebner", "ideal_equal", "intersect", "ideal_normal_form", "separating_invariant",
    "submaximal_minors_ideal",
    "Poly", "VarSet", "det_poly", "minors", "poly_from_dict", "substitute_linear",
]

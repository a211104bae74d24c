"""
Quasisymmetric varieties of permutations: noncrossing partitions, excedance
classes and the Bruhat order, Temperley-Lieb bases from permutations, and
the vanishing ideal of the permutations ``Q_lambda``.
"""

from .perm import Permutation, bruhat_leq, length
from .ncp import NoncrossingPartition, catalan, enumerate_ncp, ncp_leq
from .classes import enumerate_qsv, excedance_class_of, min_permutation, qsv_permutation
from .tl import GroupAlgebraVector, basis_check, normal_form, phi_expand
from .qpoly import Composition, Polynomial, monomial_qsym, vanishing_poly
from .groebner import buchberger, point_vanishing_ideal, verify_theorem_vanishingQSV

__all__ = [
    "Permutation", "bruhat_leq", "length",
    "NoncrossingPartition", "catalan", "enumerate_ncp", "ncp_leq",
    "enumerate_qsv", "excedance_class_of", "min_permutation", "qsv_permutation",
    "GroupAlgebraVector", "basis_check", "normal_form", "phi_expand",
    "Composition", "Polynomial", "monomial_qsym", "vanishing_poly",
    "buchberger", "point_vanishing_ideal", "verify_theorem_vanishingQSV",
]

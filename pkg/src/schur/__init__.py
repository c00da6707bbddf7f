"""Schur algebroids of Coxeter groups: Hecke algebra, double cosets, Bott-Samelson characters
and Demazure-operator bases of polynomial bimodules."""

from .coxeter import CoxeterSpec, CoxeterSystem, SpecError
from .laurent import LaurentPoly
from .hecke import HeckeElement, kl_element, kl_polynomial
from .cosets import DoubleCoset, coset_of, double_cosets
from .algebroid import SchurElement, bott_samelson_char, decompose_kl, kl_elt, standard_elt, star

__all__ = [
    "CoxeterSpec", "CoxeterSystem", "SpecError", "LaurentPoly", "HeckeElement",
    "kl_element", "kl_polynomial", "DoubleCoset", "coset_of", "double_cosets",
    "SchurElement", "bott_samelson_char", "decompose_kl", "kl_elt", "standard_elt", "star",
]

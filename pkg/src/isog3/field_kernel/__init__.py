"""Exact arithmetic: finite fields, rationals, number fields, big complex
numbers, and dense univariate polynomials over any of them."""

from .base import Field, FieldElement
from .complexfield import ComplexField, complex_field, polynomial_roots
from .finite import FiniteField, frobenius_cube_root, make_extension, prime_field, prime_power
from .numberfield import NumberField, eisenstein_field, number_field, sqrt_minus_three
from .poly import (Polynomial, poly_gcd, poly_gcd_squarefree, poly_xgcd, resultant,
                   resultant_discriminant, squarefree_factorization)
from .rational import QQ, RationalField
from .roots import (Embedding, compose_fields, distinct_degree_factorization, embedding,
                    extension_of, factor_degree_pattern, roots_in_field,
                    roots_in_splitting_field, splitting_degree)

__all__ = [
    "Field", "FieldElement", "ComplexField", "complex_field", "polynomial_roots", "FiniteField",
    "frobenius_cube_root", "make_extension", "prime_field", "prime_power", "NumberField",
    "eisenstein_field", "number_field", "sqrt_minus_three", "Polynomial", "poly_gcd",
    "poly_gcd_squarefree", "poly_xgcd", "resultant", "resultant_discriminant",
    "squarefree_factorization", "QQ", "RationalField", "Embedding", "compose_fields",
    "distinct_degree_factorization", "embedding", "extension_of", "factor_degree_pattern",
    "roots_in_field", "roots_in_splitting_field", "splitting_degree",
]

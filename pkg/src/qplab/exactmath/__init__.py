"""Exact arithmetic: rationals, Q(i), residues mod n, multivariate polynomials."""

from .poly import (
    MultiPoly,
    discriminant,
    fraction_identity,
    poly_arith,
    poly_eval,
    poly_substitute,
    resultant,
)
from .rational import (
    BigRational,
    GaussianRational,
    I,
    ResidueClass,
    as_rational,
    format_rational,
    log_int,
    parse_rational,
    rational_height,
    units_mod,
)

__all__ = [
    "BigRational",
    "GaussianRational",
    "I",
    "MultiPoly",
    "ResidueClass",
    "as_rational",
    "discriminant",
    "format_rational",
    "fraction_identity",
    "log_int",
    "parse_rational",
    "poly_arith",
    "poly_eval",
    "poly_substitute",
    "rational_height",
    "resultant",
    "units_mod",
]

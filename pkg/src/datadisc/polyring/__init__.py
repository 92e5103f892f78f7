"""Exact rational scalars, sparse multivariate polynomials, monomial
orders, and the polynomial text format."""

from .orders import (
    GREVLEX,
    LEX,
    Monomial,
    MonomialOrder,
    block_elimination,
    grevlex_key,
)
from .parser import format_polynomial, parse_polynomial
from .poly import (
    NEG_INFINITY,
    Polynomial,
    RationalScalar,
    RingContext,
    derivative,
    evaluate,
    normalize_integer_primitive,
    partial_substitute,
    ring,
    substitute,
    total_degree,
)

__all__ = [
    "GREVLEX",
    "LEX",
    "Monomial",
    "MonomialOrder",
    "NEG_INFINITY",
    "Polynomial",
    "RationalScalar",
    "RingContext",
    "block_elimination",
    "derivative",
    "evaluate",
    "format_polynomial",
    "grevlex_key",
    "normalize_integer_primitive",
    "parse_polynomial",
    "partial_substitute",
    "ring",
    "substitute",
    "total_degree",
]

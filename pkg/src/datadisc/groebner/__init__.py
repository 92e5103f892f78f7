"""Buchberger's algorithm, elimination ideals, zero-dimensional quotient
counting, and univariate squarefree parts."""

from .api import (
    EliminationResult,
    GroebnerBasis,
    KernelLimits,
    buchberger,
    eliminate,
    is_groebner_basis,
    limits_for,
    quotient_dimension,
    reduce_modulo,
    spoly,
    squarefree_part,
    univariate_generator,
)

__all__ = [
    "EliminationResult",
    "GroebnerBasis",
    "KernelLimits",
    "buchberger",
    "eliminate",
    "is_groebner_basis",
    "limits_for",
    "quotient_dimension",
    "reduce_modulo",
    "spoly",
    "squarefree_part",
    "univariate_generator",
]

"""datadisc: exact data-discriminants of likelihood equations.

Constructs Lagrange likelihood systems from algebraic statistical models,
computes ML-degrees, computes the Jacobian discriminant component DX_J by
standard elimination and by probabilistic interpolation, and classifies
real/positive critical points at concrete data.
"""

from . import errors
from .discriminant import (
    DegreeProfile,
    DiscriminantOutput,
    ShearTransform,
    degree_probe,
    dxj_elimination,
    dxj_interpolate,
    intersect_sample,
    linear_operator,
)
from .groebner import (
    EliminationResult,
    GroebnerBasis,
    buchberger,
    eliminate,
    quotient_dimension,
    squarefree_part,
    univariate_generator,
)
from .likelihood import (
    LagrangeSystem,
    MLDegreeResult,
    StatisticalModel,
    build_lagrange_system,
    bundled_model_path,
    dx_p,
    jacobian_determinant,
    load_input,
    load_model,
    load_system,
    ml_degree,
)
from .polyring import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    RingContext,
    block_elimination,
    format_polynomial,
    normalize_integer_primitive,
    parse_polynomial,
    ring,
    substitute,
    total_degree,
)
from .realclass import (
    ClassificationResult,
    classify_at,
    component_census,
    sturm_count,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "DegreeProfile",
    "DiscriminantOutput",
    "EliminationResult",
    "GREVLEX",
    "GroebnerBasis",
    "LEX",
    "LagrangeSystem",
    "MLDegreeResult",
    "MonomialOrder",
    "Polynomial",
    "RingContext",
    "ShearTransform",
    "StatisticalModel",
    "block_elimination",
    "buchberger",
    "build_lagrange_system",
    "bundled_model_path",
    "classify_at",
    "component_census",
    "degree_probe",
    "dx_p",
    "dxj_elimination",
    "dxj_interpolate",
    "eliminate",
    "errors",
    "format_polynomial",
    "intersect_sample",
    "jacobian_determinant",
    "linear_operator",
    "load_input",
    "load_model",
    "load_system",
    "ml_degree",
    "normalize_integer_primitive",
    "parse_polynomial",
    "quotient_dimension",
    "ring",
    "squarefree_part",
    "substitute",
    "total_degree",
    "univariate_generator",
]

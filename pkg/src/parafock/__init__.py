"""Exact Fock-like modules of the relative parabose set with one paraboson
and one parafermion, parametrised by the order p."""

from .carrier import (
    ALPHA,
    BETA,
    VACUUM,
    BasisIndex,
    GradeDegree,
    Tag,
    VectorExpr,
    canonical_basis,
    grade_of,
    parse_ket,
    reduce,
    subspace_dim,
)
from .gram import (
    GramMatrix,
    OrthoBasis,
    adjointness_check,
    completeness_residual,
    inner_product,
    orthonormal_change,
    sector_gram,
)
from .ladder import Fault, Generator, SparseOperator, act_expr, act_generator, matrix_of
from .parser import ParseError, parse_element
from .report import Report
from .words import (
    AlgebraElement,
    Builtin,
    basis_defining_word,
    builtin_element,
    enumerate_relations,
    evaluate,
    spanning_vector,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA", "BETA", "VACUUM", "AlgebraElement", "BasisIndex", "Builtin", "Fault",
    "Generator", "GradeDegree", "GramMatrix", "OrthoBasis", "ParseError", "Report",
    "SparseOperator", "Tag", "VectorExpr", "act_expr", "act_generator",
    "adjointness_check", "basis_defining_word", "builtin_element", "canonical_basis",
    "completeness_residual", "enumerate_relations", "evaluate", "grade_of",
    "inner_product", "matrix_of", "orthonormal_change", "parse_element", "parse_ket",
    "reduce", "sector_gram", "spanning_vector", "subspace_dim",
]

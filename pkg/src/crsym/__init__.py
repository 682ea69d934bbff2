"""Exact-arithmetic toolkit for symmetry algebras of Levi-nondegenerate
rigid hypersurfaces: tangency verification, symmetry solving, Lie-structure
analysis, the contact-graded su(p,q) machinery with Tanaka prolongation,
and weight-2 cohomology bookkeeping, all over Gaussian rationals.
"""

__version__ = "0.1.0"

from .expr import Expr, ExprError, Poly, VarTable, bar, diff, is_zero, substitute
from .parser import ExprSyntaxError, parse_expr
from .scalars import GaussianRational

__all__ = [
    "__version__",
    "GaussianRational",
    "Expr",
    "ExprError",
    "ExprSyntaxError",
    "Poly",
    "VarTable",
    "parse_expr",
    "bar",
    "diff",
    "substitute",
    "is_zero",
]

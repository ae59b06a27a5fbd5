"""Exact arithmetic kernel."""
from .factor import cube_class, cube_free_representative, cube_reduce, factor_int, factor_rational
from .graded import GradedModule, GradedModuleSpec, NotInModuleError, graded_module_reduce
from .linalg import SparseSystem, bareiss_det
from .rational import OMEGA, OMEGA_BAR, QQ, SQRT_M3, Cyclotomic, Rational, qjson, qstr
from .sparse import SparsePoly, poly_ring
from .univariate import UnivPoly, discriminant, rational_roots, resultant

__all__ = [
    "QQ", "Rational", "Cyclotomic", "OMEGA", "OMEGA_BAR", "SQRT_M3", "qstr", "qjson",
    "SparsePoly", "poly_ring", "UnivPoly", "resultant", "discriminant", "rational_roots",
    "factor_int", "factor_rational", "cube_class", "cube_free_representative", "cube_reduce",
    "GradedModule", "GradedModuleSpec", "NotInModuleError", "graded_module_reduce",
    "SparseSystem", "bareiss_det",
]

"""Sparse Groebner bases over polytopal semigroup algebras and a Macaulay-matrix
solver for square multihomogeneous systems, with brute-force cross-checks."""

from .field import BENCH_PRIME, DEFAULT_PRIME, FieldError, PrimeField, RationalField, make_field
from .fglm import LexGB, find_roots, lex_gb
from .m2 import SGB, criterion_rows, f5_new_rows, m2_sgb
from .macaulay import MacaulayMatrix, build_matrix, rank, rref
from .multihom import (
    MultigradedRing,
    MultihomSolver,
    MultihomSystem,
    blocked_matrix,
    change_coords,
    check_no_infinity,
    m3h,
    macaulay_bound,
    monomial_basis,
    mul_matrix,
)
from .orders import BaseOrder, GradedSparseOrder, SparseOrder, cmp_graded_sparse, cmp_sparse
from .poly import Poly, dehomogenize, divide, homogenize
from .schema import parse_input, to_document
from .semigroup import NotPointedError, SemigroupContext, SemigroupError, build_context

__version__ = "0.1.0"

__all__ = [
    "BENCH_PRIME", "DEFAULT_PRIME", "FieldError", "PrimeField", "RationalField", "make_field",
    "LexGB", "find_roots", "lex_gb",
    "SGB", "criterion_rows", "f5_new_rows", "m2_sgb",
    "MacaulayMatrix", "build_matrix", "rank", "rref",
    "MultigradedRing", "MultihomSolver", "MultihomSystem", "blocked_matrix", "change_coords",
    "check_no_infinity", "m3h", "macaulay_bound", "monomial_basis", "mul_matrix",
    "BaseOrder", "GradedSparseOrder", "SparseOrder", "cmp_graded_sparse", "cmp_sparse",
    "Poly", "dehomogenize", "divide", "homogenize",
    "parse_input", "to_document",
    "NotPointedError", "SemigroupContext", "SemigroupError", "build_context",
]
